#include "ctrust/engine.hpp"

#include <algorithm>
#include <numeric>

namespace ctrust::sim {

std::string_view to_string(MessageKind kind) noexcept {
    switch (kind) {
    case MessageKind::Request: return "request";
    case MessageKind::Offer: return "offer";
    case MessageKind::Solicit: return "solicit";
    case MessageKind::Recommendation: return "recommendation";
    case MessageKind::Invoke: return "invoke";
    case MessageKind::Delivery: return "delivery";
    }
    return "unknown";
}

// Synchronous in-process transport. Every exchange is appended to the
// world's message trace.
class World::Router final : public Network {
public:
    explicit Router(World& world) : world_(world) {}

    std::optional<ProviderOffer> request(const EntityId& from, const EntityId& to,
                                         const ServiceRequest& req) override {
        note(MessageKind::Request, from, to);
        const auto& target = world_.entity(to);
        if (!target.config.serves()) return std::nullopt;
        auto offer = target.provider.respond(from, req, target.store, critical(req));
        if (offer) note(MessageKind::Offer, to, from);
        return offer;
    }

    std::optional<ProviderOffer> solicit(const EntityId& from, const EntityId& to,
                                         const EntityId& subject,
                                         const ServiceRequest& req) override {
        note(MessageKind::Solicit, from, to);
        const auto& target = world_.entity(to);
        auto offer = target.provider.recommend(from, subject, req, target.store, world_.tick_,
                                               world_.config_.params.record_ttl);
        if (offer) note(MessageKind::Recommendation, to, from);
        return offer;
    }

    std::optional<Delivery> invoke(const EntityId& from, const EntityId& to,
                                   const ServiceRequest& req) override {
        note(MessageKind::Invoke, from, to);
        auto& target = world_.mutable_entity(to);
        if (!target.config.serves()) return std::nullopt;
        auto promised = target.provider.promise(from, req, critical(req));
        if (!promised) return std::nullopt;
        Delivery d;
        d.delivered = deliver(target.config.behavior, *promised, world_.tick_, target.rng);
        d.promised = std::move(*promised);
        d.context = observe(from, to);
        note(MessageKind::Delivery, to, from);
        return d;
    }

    ContextDescriptor observe(const EntityId& observer, const EntityId& subject) override {
        return observe_context(world_.entity(observer).config.context,
                               world_.entity(subject).config.context);
    }

private:
    std::vector<std::string> critical(const ServiceRequest& req) const {
        std::vector<std::string> names;
        if (const auto* svc = world_.config_.find_service(req.service_type)) {
            for (const auto& c : svc->critical.conditions) names.push_back(c.context);
        }
        return names;
    }

    void note(MessageKind kind, const EntityId& from, const EntityId& to) {
        world_.messages_.push_back(Message{world_.tick_, kind, from, to});
    }

    World& world_;
};

World::World(ScenarioConfig config) : config_(std::move(config)) {
    config_.validate();

    RequesterConfig rc;
    rc.params = config_.params;
    for (const auto& s : config_.service_types) rc.services.emplace(s.id, s);

    for (const auto& e : config_.entities) {
        EntityState st{e, StoreView(e.id), ProviderAgent{}, std::nullopt,
                       entity_stream(config_.seed, e.id)};
        st.provider.id = e.id;
        st.provider.policy = e.policy;
        for (const auto& cap : e.capabilities) st.provider.capabilities.emplace(cap.service_type, cap);
        st.provider.min_trv = config_.min_trv;
        st.provider.recommendation_bias = recommendation_bias(e.behavior);
        if (e.requests()) st.requester.emplace(e.id, rc);
        for (const auto& rec : e.trust_records) st.store.upsert_trust_record(rec, 0);
        entities_.emplace(e.id, std::move(st));
    }

    // Episodes fire in (tick, requester id) order; ties keep schedule order.
    std::stable_sort(config_.episodes.begin(), config_.episodes.end(),
                     [](const EpisodeConfig& a, const EpisodeConfig& b) {
                         return std::tie(a.tick, a.requester) < std::tie(b.tick, b.requester);
                     });
    std::stable_sort(config_.context_updates.begin(), config_.context_updates.end(),
                     [](const ContextUpdate& a, const ContextUpdate& b) { return a.tick < b.tick; });

    router_ = std::make_unique<Router>(*this);
}

World::~World() = default;

const EntityState& World::entity(const EntityId& id) const {
    auto it = entities_.find(id);
    if (it == entities_.end()) fail(ErrorCode::InvalidInput, "unknown entity '" + id + "'");
    return it->second;
}

EntityState& World::mutable_entity(const EntityId& id) {
    auto it = entities_.find(id);
    if (it == entities_.end()) fail(ErrorCode::InvalidInput, "unknown entity '" + id + "'");
    return it->second;
}

std::vector<Domain> World::domains_for(const EntityId& requester) const {
    const auto& self = entity(requester).config.context;
    std::vector<EntityContext> seen;
    for (const auto& [id, st] : entities_) {
        if (id == requester) continue;
        seen.push_back(EntityContext{id, observe_context(self, st.config.context)});
    }
    std::vector<DomainSpec> specs;
    for (const auto& s : config_.service_types) specs.push_back(DomainSpec{s.id, s.id, s.critical});
    auto domains = partition_domains(seen, specs);
    auto rest = residual_domain(seen, domains);
    domains.push_back(std::move(rest));
    return domains;
}

void World::step() {
    if (done()) return;
    last_episodes_.clear();

    for (const auto& u : config_.context_updates) {
        if (u.tick != tick_) continue;
        auto& ctx = mutable_entity(u.entity).config.context;
        for (const auto& [k, v] : u.context) ctx[k] = v;
    }

    for (auto& [id, st] : entities_) refresh_expired_records(st.store, tick_, config_.params);

    auto first = std::lower_bound(config_.episodes.begin(), config_.episodes.end(), tick_,
                                  [](const EpisodeConfig& e, Tick t) { return e.tick < t; });
    for (auto it = first; it != config_.episodes.end() && it->tick == tick_; ++it) {
        auto all = domains_for(it->requester);
        const std::span<const Domain> typed(all.data(), all.size() - 1);
        auto& st = mutable_entity(it->requester);
        auto result = st.requester->run_episode(it->request, tick_, st.store, *router_, typed, all);
        log_episode(*it, result);
        last_episodes_.push_back(std::move(result));
    }
    ++tick_;
}

void World::run_to_end() {
    while (!done()) step();
}

void World::log_episode(const EpisodeConfig& ep, const EpisodeResult& result) {
    EntityId selected;
    if (result.selection) selected = result.selection->selected;

    if (result.selection) {
        for (const auto& c : result.selection->candidates) {
            MetricsRow row;
            row.tick = tick_;
            row.observer = ep.requester;
            row.subject = c.provider_id;
            row.trv = c.trv.value();
            if (c.dt) row.dt = c.dt->value();
            if (c.it) row.it = c.it->value();
            row.selected = selected;
            row.outcome = outcome::kEvaluated;
            metrics_.append(std::move(row));
        }
    }

    MetricsRow episode;
    episode.tick = tick_;
    episode.observer = ep.requester;
    episode.subject = selected;
    episode.selected = selected;
    if (result.settlement) {
        for (const auto& u : result.settlement->recommender_updates) {
            MetricsRow row;
            row.tick = tick_;
            row.observer = ep.requester;
            row.subject = u.recommender_id;
            row.rt = u.rt_new.value();
            row.selected = selected;
            row.outcome = outcome::kRtUpdate;
            metrics_.append(std::move(row));
        }
        episode.trv = result.settlement->record.trv.value();
        if (result.settlement->dt) episode.dt = result.settlement->dt->value();
        if (result.settlement->it) episode.it = result.settlement->it->value();
    }
    switch (result.outcome) {
    case EpisodeOutcome::ProvideSettled: episode.outcome = outcome::kProvideSettled; break;
    case EpisodeOutcome::RecommendSettled: episode.outcome = outcome::kRecommendSettled; break;
    case EpisodeOutcome::Failed: episode.outcome = outcome::kFailed; break;
    }
    metrics_.append(std::move(episode));
}

MetricsLog run(const ScenarioConfig& config) {
    World world(config);
    world.run_to_end();
    return world.metrics();
}

} // namespace ctrust::sim
