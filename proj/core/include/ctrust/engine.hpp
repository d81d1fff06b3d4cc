#pragma once

// Deterministic discrete-time environment. Each tick: apply scheduled context
// updates, run the trust-maintenance sweep, then fire the tick's episodes in
// requester-id order. All request/offer traffic of an episode is exchanged
// within the tick it fires in.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ctrust/behavior.hpp"
#include "ctrust/metrics.hpp"
#include "ctrust/provider.hpp"
#include "ctrust/requester.hpp"
#include "ctrust/scenario.hpp"

namespace ctrust::sim {

enum class MessageKind { Request, Offer, Solicit, Recommendation, Invoke, Delivery };

std::string_view to_string(MessageKind kind) noexcept;

struct Message {
    Tick tick = 0;
    MessageKind kind = MessageKind::Request;
    EntityId from;
    EntityId to;
};

struct EntityState {
    EntityConfig config;
    StoreView store;
    ProviderAgent provider;
    std::optional<RequesterAgent> requester;
    Rng rng;
};

class World {
public:
    /// Validates `config` (Error(InvalidConfig) listing every violation) and
    /// seeds every entity's store.
    explicit World(ScenarioConfig config);
    ~World();

    World(const World&) = delete;
    World& operator=(const World&) = delete;

    Tick now() const noexcept { return tick_; }
    bool done() const noexcept { return tick_ >= config_.ticks; }

    /// Advances one tick.
    void step();

    /// Steps until every tick has run.
    void run_to_end();

    const ScenarioConfig& config() const noexcept { return config_; }
    const MetricsLog& metrics() const noexcept { return metrics_; }
    const std::vector<Message>& messages() const noexcept { return messages_; }
    const EntityState& entity(const EntityId& id) const;

    /// Domains of `requester` as observed at the current tick: one per
    /// service type from its critical contexts, plus the residual domain.
    std::vector<Domain> domains_for(const EntityId& requester) const;

    /// Results of the episodes fired by the last step, in firing order.
    const std::vector<EpisodeResult>& last_episodes() const noexcept { return last_episodes_; }

private:
    class Router;
    friend class Router;

    EntityState& mutable_entity(const EntityId& id);
    void log_episode(const EpisodeConfig& ep, const EpisodeResult& result);

    ScenarioConfig config_;
    std::map<EntityId, EntityState> entities_;
    std::unique_ptr<Router> router_;
    Tick tick_ = 0;
    MetricsLog metrics_;
    std::vector<Message> messages_;
    std::vector<EpisodeResult> last_episodes_;
};

/// Runs every tick of `config` and returns the metrics. Deterministic: the
/// same config (seed included) always yields the same log.
MetricsLog run(const ScenarioConfig& config);

} // namespace ctrust::sim
