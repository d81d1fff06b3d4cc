#pragma once

// Service-provider side: the privacy gate in front of the request processor,
// and the processor itself (provide, recommend someone else, or stay silent).

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ctrust/service.hpp"
#include "ctrust/store.hpp"

namespace ctrust {

enum class PrivacyLevel { Public = 0, Restricted = 1, Private = 2 };

std::optional<PrivacyLevel> parse_privacy_level(std::string_view text);
std::string_view to_string(PrivacyLevel level) noexcept;

struct PrivacyPolicy {
    std::set<EntityId> deny;
    std::optional<std::set<EntityId>> allow_only; // when set, everyone else is rejected
    std::map<EntityId, PrivacyLevel> clearance;
    PrivacyLevel default_clearance = PrivacyLevel::Public;
    std::map<std::string, PrivacyLevel> attr_privacy_levels;
    std::map<std::string, PrivacyLevel> context_privacy_levels;

    PrivacyLevel clearance_of(const EntityId& requester) const;

    /// Attribute and context names of `service` that carry no privacy level.
    std::vector<std::string> unassigned(const ServiceType& service) const;
};

enum class GateDecision { Pass, Reject };

/// Authentication against the access rules, then a level check: every
/// requested attribute and critical context must sit at or below the
/// requester's clearance. Names without an assigned level count as public.
GateDecision local_policy_gate(const EntityId& requester_id, const ServiceRequest& request,
                               const PrivacyPolicy& policy,
                               std::span<const std::string> critical_contexts = {});

// What the provider can deliver for one service type, in normalized units.
struct Capability {
    ServiceTypeId service_type;
    std::map<std::string, double> values;

    /// Real values aligned with `request`'s attributes; nullopt when an
    /// attribute is not offered at all.
    std::optional<std::vector<double>> real_values(const ServiceRequest& request) const;
};

struct ProcessResult {
    enum class Kind { Provide, Recommend, NoResponse };

    Kind kind = Kind::NoResponse;
    std::vector<double> rv;             // Provide
    std::optional<TrustRecord> record;  // Recommend
};

/// The request processing function. Provide when every real value meets its
/// threshold; otherwise recommend the best acceptable trust record for the
/// service type; otherwise stay silent. `capability` may be null when the
/// provider does not offer the service type at all.
ProcessResult process_request(const ServiceRequest& request, const Capability* capability,
                              const StoreView& store, double min_trv);

/// Values a recommender expects `provider` to deliver for `request`: the last
/// values it observed from that provider, or the request thresholds when it
/// has no compatible observation.
std::vector<double> recommended_values(const StoreView& store, const EntityId& provider,
                                       const ServiceRequest& request);

struct ProviderAgent {
    EntityId id;
    PrivacyPolicy policy;
    std::map<ServiceTypeId, Capability> capabilities;
    double min_trv = 0.3;
    double recommendation_bias = 0.0; // added to every TRV this entity reports

    /// Privacy gate followed by the request processor. Nothing is returned to
    /// a rejected requester, and rejection happens before any capability is
    /// examined.
    std::optional<ProviderOffer> respond(const EntityId& requester, const ServiceRequest& request,
                                         const StoreView& store,
                                         std::span<const std::string> critical_contexts = {}) const;

    /// Answer to "what do you think of `subject`?". Reports the owner's
    /// unexpired record for (subject, service type), if any, regardless of
    /// its sign.
    std::optional<ProviderOffer> recommend(const EntityId& requester, const EntityId& subject,
                                           const ServiceRequest& request, const StoreView& store,
                                           Tick t_cur, Tick ttl) const;

    /// Values promised on invocation: nullopt when the gate rejects or a
    /// threshold is not met.
    std::optional<std::vector<double>> promise(const EntityId& requester,
                                               const ServiceRequest& request,
                                               std::span<const std::string> critical_contexts = {}) const;
};

} // namespace ctrust
