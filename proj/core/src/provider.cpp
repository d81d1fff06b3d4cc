#include "ctrust/provider.hpp"

#include <algorithm>

namespace ctrust {

std::optional<PrivacyLevel> parse_privacy_level(std::string_view text) {
    if (text == "public") return PrivacyLevel::Public;
    if (text == "restricted") return PrivacyLevel::Restricted;
    if (text == "private") return PrivacyLevel::Private;
    return std::nullopt;
}

std::string_view to_string(PrivacyLevel level) noexcept {
    switch (level) {
    case PrivacyLevel::Public: return "public";
    case PrivacyLevel::Restricted: return "restricted";
    case PrivacyLevel::Private: return "private";
    }
    return "unknown";
}

PrivacyLevel PrivacyPolicy::clearance_of(const EntityId& requester) const {
    auto it = clearance.find(requester);
    return it == clearance.end() ? default_clearance : it->second;
}

std::vector<std::string> PrivacyPolicy::unassigned(const ServiceType& service) const {
    std::vector<std::string> out;
    for (const auto& a : service.attributes) {
        if (!attr_privacy_levels.count(a.name)) out.push_back(a.name);
    }
    for (const auto& c : service.critical.conditions) {
        if (!context_privacy_levels.count(c.context) &&
            std::find(out.begin(), out.end(), c.context) == out.end()) {
            out.push_back(c.context);
        }
    }
    return out;
}

GateDecision local_policy_gate(const EntityId& requester_id, const ServiceRequest& request,
                               const PrivacyPolicy& policy,
                               std::span<const std::string> critical_contexts) {
    if (policy.deny.count(requester_id)) return GateDecision::Reject;
    if (policy.allow_only && !policy.allow_only->count(requester_id)) return GateDecision::Reject;

    const PrivacyLevel clearance = policy.clearance_of(requester_id);
    auto above = [clearance](const std::map<std::string, PrivacyLevel>& levels,
                             const std::string& name) {
        auto it = levels.find(name);
        return it != levels.end() && it->second > clearance;
    };
    for (const auto& a : request.attrs) {
        if (above(policy.attr_privacy_levels, a.name)) return GateDecision::Reject;
    }
    for (const auto& c : critical_contexts) {
        if (above(policy.context_privacy_levels, c)) return GateDecision::Reject;
    }
    return GateDecision::Pass;
}

std::optional<std::vector<double>> Capability::real_values(const ServiceRequest& request) const {
    std::vector<double> rv;
    rv.reserve(request.attrs.size());
    for (const auto& a : request.attrs) {
        auto it = values.find(a.name);
        if (it == values.end()) return std::nullopt;
        rv.push_back(it->second);
    }
    return rv;
}

ProcessResult process_request(const ServiceRequest& request, const Capability* capability,
                              const StoreView& store, double min_trv) {
    ProcessResult result;
    if (capability && capability->service_type == request.service_type) {
        if (auto rv = capability->real_values(request)) {
            bool all_met = true;
            for (std::size_t i = 0; i < rv->size(); ++i) {
                if (!((*rv)[i] >= request.attrs[i].tv)) {
                    all_met = false;
                    break;
                }
            }
            if (all_met) {
                result.kind = ProcessResult::Kind::Provide;
                result.rv = std::move(*rv);
                return result;
            }
        }
    }
    if (auto rec = store.find_recommendable(request.service_type, min_trv)) {
        result.kind = ProcessResult::Kind::Recommend;
        result.record = std::move(rec);
        return result;
    }
    return result;
}

std::vector<double> recommended_values(const StoreView& store, const EntityId& provider,
                                       const ServiceRequest& request) {
    const auto* last = store.last_interaction(provider, request.service_type);
    if (last && last->service_attrs.size() == request.attrs.size()) return last->service_attrs;
    return request.thresholds();
}

namespace {

TrustRecord biased(TrustRecord rec, double bias) {
    rec.trv = TrustValue::clamped(rec.trv.value() + bias);
    return rec;
}

} // namespace

std::optional<ProviderOffer> ProviderAgent::respond(const EntityId& requester,
                                                    const ServiceRequest& request,
                                                    const StoreView& store,
                                                    std::span<const std::string> critical_contexts) const {
    if (local_policy_gate(requester, request, policy, critical_contexts) == GateDecision::Reject) {
        return std::nullopt;
    }
    auto cap = capabilities.find(request.service_type);
    auto result = process_request(request, cap == capabilities.end() ? nullptr : &cap->second,
                                  store, min_trv);
    switch (result.kind) {
    case ProcessResult::Kind::Provide:
        return ProviderOffer{id, OfferKind::Provide, std::move(result.rv), std::nullopt};
    case ProcessResult::Kind::Recommend: {
        // Never point the requester at itself.
        if (result.record->provider_id == requester) return std::nullopt;
        auto rv = recommended_values(store, result.record->provider_id, request);
        return ProviderOffer{id, OfferKind::Recommend, std::move(rv),
                             biased(std::move(*result.record), recommendation_bias)};
    }
    case ProcessResult::Kind::NoResponse:
        break;
    }
    return std::nullopt;
}

std::optional<ProviderOffer> ProviderAgent::recommend(const EntityId& requester,
                                                      const EntityId& subject,
                                                      const ServiceRequest& request,
                                                      const StoreView& store, Tick t_cur,
                                                      Tick ttl) const {
    if (policy.deny.count(requester)) return std::nullopt;
    if (policy.allow_only && !policy.allow_only->count(requester)) return std::nullopt;
    const auto* rec = store.find_trust_record(subject, request.service_type);
    if (!rec || expired(*rec, t_cur, ttl)) return std::nullopt;
    return ProviderOffer{id, OfferKind::Recommend, recommended_values(store, subject, request),
                         biased(*rec, recommendation_bias)};
}

std::optional<std::vector<double>> ProviderAgent::promise(const EntityId& requester,
                                                          const ServiceRequest& request,
                                                          std::span<const std::string> critical_contexts) const {
    if (local_policy_gate(requester, request, policy, critical_contexts) == GateDecision::Reject) {
        return std::nullopt;
    }
    auto cap = capabilities.find(request.service_type);
    if (cap == capabilities.end()) return std::nullopt;
    auto rv = cap->second.real_values(request);
    if (!rv) return std::nullopt;
    for (std::size_t i = 0; i < rv->size(); ++i) {
        if (!((*rv)[i] >= request.attrs[i].tv)) return std::nullopt;
    }
    return rv;
}

} // namespace ctrust
