#include "ctrust/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ctrust {

FuzzyMembership membership(double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        fail(ErrorCode::InvalidInput, "membership: value outside [0, 1]");
    }
    FuzzyMembership m;
    m.bad = std::max(0.0, 1.0 - 2.0 * value);
    m.good = std::max(0.0, 2.0 * value - 1.0);
    m.average = 1.0 - m.bad - m.good;
    return m;
}

AttributeWeights::AttributeWeights(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        fail(ErrorCode::InvalidConfig, "attribute weights: at least one weight required");
    }
    for (double w : weights_) {
        if (!(w >= 0.0)) fail(ErrorCode::InvalidConfig, "attribute weights: negative weight");
    }
    const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTolerance) {
        fail(ErrorCode::InvalidConfig,
             "attribute weights must satisfy sum(w_j) = 1, got " + std::to_string(sum));
    }
}

AttributeWeights AttributeWeights::uniform(std::size_t n) {
    if (n == 0) fail(ErrorCode::InvalidConfig, "attribute weights: at least one weight required");
    return AttributeWeights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FuzzyMembership evaluate_provider(const AttributeWeights& weights,
                                  std::span<const FuzzyMembership> memberships) {
    if (memberships.size() != weights.size()) {
        fail(ErrorCode::InvalidInput, "evaluate_provider: weight/membership length mismatch");
    }
    FuzzyMembership sp;
    const auto w = weights.values();
    for (std::size_t j = 0; j < w.size(); ++j) {
        sp.good += w[j] * memberships[j].good;
        sp.average += w[j] * memberships[j].average;
        sp.bad += w[j] * memberships[j].bad;
    }
    // Rounding can push a convex combination a hair past the unit interval.
    sp.good = std::clamp(sp.good, 0.0, 1.0);
    sp.average = std::clamp(sp.average, 0.0, 1.0);
    sp.bad = std::clamp(sp.bad, 0.0, 1.0);
    return sp;
}

double score_provider(TrustValue trv, double sp_good, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        fail(ErrorCode::InvalidInput, "score_provider: alpha outside [0, 1]");
    }
    if (!(sp_good >= 0.0 && sp_good <= 1.0)) {
        fail(ErrorCode::InvalidInput, "score_provider: SP_good outside [0, 1]");
    }
    return alpha * trv.value() + (1.0 - alpha) * sp_good;
}

EntityId select_target(std::span<const ProviderScore> scores) {
    if (scores.empty()) fail(ErrorCode::NoCandidates, "select_target: no candidates");
    const ProviderScore* best = &scores.front();
    for (const auto& s : scores.subspan(1)) {
        if (s.v > best->v + kScoreTieTolerance) {
            best = &s;
        } else if (std::abs(s.v - best->v) <= kScoreTieTolerance &&
                   s.provider_id < best->provider_id) {
            best = &s;
        }
    }
    return best->provider_id;
}

} // namespace ctrust
