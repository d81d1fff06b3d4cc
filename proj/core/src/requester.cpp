#include "ctrust/requester.hpp"

#include <algorithm>
#include <set>

namespace ctrust {

std::string_view to_string(EpisodeOutcome outcome) noexcept {
    switch (outcome) {
    case EpisodeOutcome::ProvideSettled: return "provide-settled";
    case EpisodeOutcome::RecommendSettled: return "recommend-settled";
    case EpisodeOutcome::Failed: return "failed";
    }
    return "unknown";
}

std::vector<EntityId> domain_targets(const EntityId& self, const ServiceRequest& request,
                                     std::span<const Domain> domains) {
    std::set<EntityId> targets;
    for (const auto& d : domains) {
        if (!d.service_type.empty() && d.service_type != request.service_type) continue;
        targets.insert(d.members.begin(), d.members.end());
    }
    targets.erase(self);
    return {targets.begin(), targets.end()};
}

namespace {

std::vector<ProviderOffer> ask_all(const EntityId& self, const ServiceRequest& request,
                                   const std::vector<EntityId>& targets, Network& network) {
    std::vector<ProviderOffer> offers;
    for (const auto& t : targets) {
        if (auto offer = network.request(self, t, request)) offers.push_back(std::move(*offer));
    }
    return offers;
}

// Component-wise mean of equally sized vectors; empty when there is nothing
// compatible to average.
std::vector<double> mean_vector(const std::vector<const std::vector<double>*>& vs,
                                std::size_t n) {
    std::vector<double> out(n, 0.0);
    std::size_t used = 0;
    for (const auto* v : vs) {
        if (v->size() != n) continue;
        for (std::size_t i = 0; i < n; ++i) out[i] += (*v)[i];
        ++used;
    }
    if (used == 0) return {};
    for (auto& x : out) x /= static_cast<double>(used);
    return out;
}

} // namespace

std::vector<ProviderOffer> dispatch(const EntityId& self, const ServiceRequest& request,
                                    std::span<const Domain> domains, Network& network) {
    return ask_all(self, request, domain_targets(self, request, domains), network);
}

std::vector<ProviderOffer> broadcast_fallback(const EntityId& self, const ServiceRequest& request,
                                              std::span<const Domain> all_domains,
                                              Network& network) {
    std::set<EntityId> targets;
    for (const auto& d : all_domains) targets.insert(d.members.begin(), d.members.end());
    targets.erase(self);
    return ask_all(self, request, {targets.begin(), targets.end()}, network);
}

const CandidateEvaluation& Selection::chosen() const {
    for (const auto& c : candidates) {
        if (c.provider_id == selected) return c;
    }
    fail(ErrorCode::InvalidInput, "selection: chosen provider missing from candidates");
}

RequesterAgent::RequesterAgent(EntityId id, RequesterConfig config)
    : id_(std::move(id)), config_(std::move(config)) {
    config_.params.validate();
}

const ServiceType& RequesterAgent::service(const ServiceTypeId& id) const {
    auto it = config_.services.find(id);
    if (it == config_.services.end()) {
        fail(ErrorCode::InvalidInput, "requester '" + id_ + "' knows no service type '" + id + "'");
    }
    return it->second;
}

std::vector<ProviderOffer> RequesterAgent::collect_offers(const ServiceRequest& request,
                                                          std::span<const Domain> domains,
                                                          std::span<const Domain> all_domains,
                                                          Network& network,
                                                          bool* broadcast) const {
    auto offers = dispatch(id_, request, domains, network);
    const bool fallback = offers.empty();
    if (fallback) offers = broadcast_fallback(id_, request, all_domains, network);
    if (broadcast) *broadcast = fallback;
    return offers;
}

std::optional<TrustValue> RequesterAgent::weighted_indirect(const ServiceType& svc,
                                                            const CandidateEvaluation& cand,
                                                            StoreView& store, Network& network,
                                                            std::vector<EntityId>* excluded) const {
    const auto& params = config_.params;
    std::vector<Recommendation> weighted;
    std::set<EntityId> seen;
    for (const auto& r : cand.recommendations) {
        if (!seen.insert(r.recommender_id).second) continue;
        const auto& profile = store.recommender(r.recommender_id);
        if (params.detect_dishonest && detect_dishonest(profile.recommendations, params)) {
            if (excluded) excluded->push_back(r.recommender_id);
            continue;
        }
        const double penalty =
            context_penalty(svc.recommender_rules, network.observe(id_, r.recommender_id));
        weighted.push_back(
            Recommendation{r.recommender_id, TrustValue::clamped(profile.rt.value() * penalty), r.trv});
    }
    if (weighted.empty()) return std::nullopt;
    try {
        return indirect_trust(weighted);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoIndirectEvidence) throw;
        return std::nullopt;
    }
}

CandidateEvaluation RequesterAgent::evaluate_trust(const ServiceRequest& request,
                                                   const EntityId& provider,
                                                   std::vector<ReceivedRecommendation> recommendations,
                                                   Tick tick, StoreView& store,
                                                   Network& network) const {
    const auto& params = config_.params;
    const auto& svc = service(request.service_type);

    CandidateEvaluation c;
    c.provider_id = provider;

    auto q = store.query_history(provider, request.service_type, tick, params.record_ttl,
                                 params.adequacy_min_records);
    c.history_count = static_cast<int>(q.records.size());
    c.adequate = q.adequate;
    c.method = select_method(c.history_count, true, params);
    if (!q.records.empty()) c.dt = direct_trust(q.records, tick, params);

    // Nothing known first-hand and nobody vouched: ask the entities we hold
    // trust records or recommender profiles about.
    if (q.records.empty() && recommendations.empty()) {
        std::set<EntityId> known;
        for (const auto& [key, rec] : store.trust_records()) known.insert(key.first);
        for (const auto& [rid, profile] : store.recommenders()) known.insert(rid);
        known.erase(id_);
        known.erase(provider);
        for (const auto& k : known) {
            auto offer = network.solicit(id_, k, provider, request);
            if (!offer || !offer->recommended || offer->recommended->provider_id != provider) continue;
            recommendations.push_back(
                ReceivedRecommendation{k, offer->recommended->trv, offer->rv, true});
        }
    }

    for (const auto& r : recommendations) {
        store.recommender(r.recommender_id).recommendations.push_back(r.trv);
    }
    c.recommendations = std::move(recommendations);
    c.it = weighted_indirect(svc, c, store, network, &c.excluded_recommenders);

    c.trv = (c.dt || c.it) ? combine_trust(c.dt, c.it, params, c.adequate) : new_entity_trust();
    return c;
}

Selection RequesterAgent::choose(const ServiceRequest& request,
                                 std::span<const ProviderOffer> offers, Tick tick,
                                 StoreView& store, Network& network) const {
    request.validate();
    const auto& params = config_.params;
    const auto& svc = service(request.service_type);

    struct Pending {
        bool offered = false;
        std::vector<double> rv;
        std::vector<ReceivedRecommendation> recs;
    };
    std::map<EntityId, Pending> pending;
    for (const auto& o : offers) {
        if (o.kind == OfferKind::Provide) {
            if (o.provider_id == id_ || o.rv.size() != request.attrs.size()) continue;
            auto& p = pending[o.provider_id];
            p.offered = true;
            p.rv = o.rv;
        } else if (o.recommended) {
            const auto& subject = o.recommended->provider_id;
            if (subject == id_ || subject == o.provider_id) continue;
            pending[subject].recs.push_back(
                ReceivedRecommendation{o.provider_id, o.recommended->trv, o.rv, false});
        }
    }
    if (pending.empty()) {
        fail(ErrorCode::EpisodeFailed, "requester '" + id_ + "': no candidate providers");
    }

    const AttributeWeights weights =
        svc.weights.size() == request.attrs.size()
            ? AttributeWeights(svc.weights)
            : AttributeWeights::uniform(request.attrs.size());

    Selection sel;
    std::vector<ProviderScore> scores;
    for (auto& [provider, p] : pending) {
        auto c = evaluate_trust(request, provider, std::move(p.recs), tick, store, network);
        c.offered = p.offered;
        if (p.offered) {
            c.rv = std::move(p.rv);
        } else {
            std::vector<const std::vector<double>*> honest, all;
            for (const auto& r : c.recommendations) {
                all.push_back(&r.rv);
                if (std::find(c.excluded_recommenders.begin(), c.excluded_recommenders.end(),
                              r.recommender_id) == c.excluded_recommenders.end()) {
                    honest.push_back(&r.rv);
                }
            }
            c.rv = mean_vector(honest, request.attrs.size());
            if (c.rv.empty()) c.rv = mean_vector(all, request.attrs.size());
            if (c.rv.empty()) c.rv = request.thresholds();
        }

        std::vector<FuzzyMembership> rows;
        rows.reserve(c.rv.size());
        for (double x : c.rv) rows.push_back(membership(std::clamp(x, 0.0, 1.0)));
        c.sp = evaluate_provider(weights, rows);
        c.v = score_provider(c.trv, c.sp.good, params.alpha);
        scores.push_back(ProviderScore{c.provider_id, c.sp, c.v});
        sel.candidates.push_back(std::move(c));
    }
    sel.selected = select_target(scores);
    return sel;
}

Settlement RequesterAgent::settle_transaction(const ServiceRequest& request,
                                              const Delivery& delivery,
                                              const CandidateEvaluation& chosen, Tick tick,
                                              StoreView& store, Network& network) const {
    const auto& params = config_.params;
    const auto& svc = service(request.service_type);

    Settlement s;
    const double distance = satisfaction_distance(delivery.promised, delivery.delivered);
    s.interaction = InteractionRecord{chosen.provider_id, request.service_type, delivery.delivered,
                                      delivery.context, satisfaction_degree(distance), tick};
    store.append_interaction(s.interaction);

    std::set<EntityId> updated;
    for (const auto& r : chosen.recommendations) {
        if (r.rv.size() != delivery.delivered.size()) continue;
        if (!updated.insert(r.recommender_id).second) continue;
        auto& profile = store.recommender(r.recommender_id);
        RecommenderUpdate u;
        u.recommender_id = r.recommender_id;
        u.rt_old = profile.rt;
        u.delta = similarity_distance(delivery.delivered, r.rv);
        u.uf = update_factor(u.delta, params.error_apt);
        u.rt_new = update_recommender_trust(profile.rt, u.uf);
        profile.rt = u.rt_new;
        profile.accuracy_history.push_back(AccuracySample{u.delta, tick});
        s.recommender_updates.push_back(u);
    }

    auto q = store.query_history(chosen.provider_id, request.service_type, tick,
                                 params.record_ttl, params.adequacy_min_records);
    s.dt = direct_trust(q.records, tick, params);
    s.it = weighted_indirect(svc, chosen, store, network, nullptr);
    const TrustValue trv = combine_trust(s.dt, s.it, params, q.adequate);

    s.record = TrustRecord{request.service_type, request.attribute_names(), trv, tick,
                           chosen.provider_id};
    store.upsert_trust_record(s.record, tick);
    return s;
}

EpisodeResult RequesterAgent::run_episode(const ServiceRequest& request, Tick tick,
                                          StoreView& store, Network& network,
                                          std::span<const Domain> domains,
                                          std::span<const Domain> all_domains) const {
    EpisodeResult result;
    result.offers = collect_offers(request, domains, all_domains, network, &result.broadcast);
    if (result.offers.empty()) {
        result.failure_reason = "no offers";
        return result;
    }
    try {
        result.selection = choose(request, result.offers, tick, store, network);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::EpisodeFailed) throw;
        result.failure_reason = "no candidates";
        return result;
    }
    const auto& chosen = result.selection->chosen();
    auto delivery = network.invoke(id_, chosen.provider_id, request);
    if (!delivery) {
        result.failure_reason = "invocation refused";
        return result;
    }
    result.settlement = settle_transaction(request, *delivery, chosen, tick, store, network);
    result.outcome =
        chosen.offered ? EpisodeOutcome::ProvideSettled : EpisodeOutcome::RecommendSettled;
    return result;
}

} // namespace ctrust
