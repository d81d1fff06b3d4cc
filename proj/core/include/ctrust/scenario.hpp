#pragma once

// Declarative scenario: population, behaviors, service types and the episode
// schedule. Read from JSON; raw attribute values are normalized through the
// bounds of their service type on load.

#include <filesystem>
#include <string>
#include <vector>

#include "ctrust/behavior.hpp"
#include "ctrust/provider.hpp"
#include "ctrust/service.hpp"
#include "ctrust/trust.hpp"

namespace ctrust::sim {

enum class Role { Requester, Provider, Both };

std::string_view to_string(Role role) noexcept;

struct EntityConfig {
    EntityId id;
    Role role = Role::Both;
    ContextDescriptor context;
    BehaviorModel behavior = Honest{};
    PrivacyPolicy policy;
    std::vector<Capability> capabilities; // normalized values
    std::vector<TrustRecord> trust_records; // seeded at tick 0

    bool serves() const noexcept { return role != Role::Requester; }
    bool requests() const noexcept { return role != Role::Provider; }
};

struct EpisodeConfig {
    Tick tick = 0;
    EntityId requester;
    ServiceRequest request; // normalized thresholds
};

// Merged into the entity's context at the start of `tick`.
struct ContextUpdate {
    Tick tick = 0;
    EntityId entity;
    ContextDescriptor context;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::uint64_t seed = 0;
    Tick ticks = 0;
    TrustParams params;
    double min_trv = 0.3; // threshold for recommending a trust record
    std::vector<ServiceType> service_types;
    std::vector<EntityConfig> entities;
    std::vector<EpisodeConfig> episodes;
    std::vector<ContextUpdate> context_updates;

    // Problems found while reading the document (unknown names, raw values
    // outside their bounds). Reported together with violations().
    std::vector<std::string> load_issues;

    const ServiceType* find_service(const ServiceTypeId& id) const;
    const EntityConfig* find_entity(const EntityId& id) const;

    /// Every violated constraint, including load issues. Empty when valid.
    std::vector<std::string> violations() const;

    /// Throws Error(InvalidConfig) listing every violation.
    void validate() const;
};

/// Parses a scenario document. Malformed JSON or wrong value types throw
/// Error(Parse); semantic problems are left for validate().
ScenarioConfig parse_scenario(const std::string& json_text);

/// Reads and parses a file. Throws Error(Io) when it cannot be read.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Applies `key=value` to the scenario. Recognized keys: the TrustParams
/// fields, min_trv, seed and ticks. Throws Error(InvalidInput) otherwise.
void apply_override(ScenarioConfig& config, const std::string& key, const std::string& value);

} // namespace ctrust::sim
