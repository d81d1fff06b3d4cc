#pragma once

#include <span>
#include <vector>

#include "ctrust/types.hpp"

namespace ctrust {

// Degrees of membership of one value in the three quality levels.
struct FuzzyMembership {
    double good = 0.0;
    double average = 0.0;
    double bad = 0.0;

    bool operator==(const FuzzyMembership&) const = default;
};

/// Triangular memberships peaking at 0 (bad), 0.5 (average) and 1 (good),
/// each with support width 1. The three degrees always sum to 1.
FuzzyMembership membership(double value);

// Non-negative per-attribute importance weights summing to 1.
class AttributeWeights {
public:
    static constexpr double kSumTolerance = 1e-9;

    /// Throws Error(InvalidConfig) on a negative weight, an empty vector or a
    /// sum that differs from 1 by more than kSumTolerance.
    explicit AttributeWeights(std::vector<double> weights);

    /// Equal weights over `n` attributes.
    static AttributeWeights uniform(std::size_t n);

    std::span<const double> values() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }

private:
    std::vector<double> weights_;
};

/// Weighted sum of the per-attribute memberships, one column at a time.
FuzzyMembership evaluate_provider(const AttributeWeights& weights,
                                  std::span<const FuzzyMembership> memberships);

/// alpha * TRV + (1 - alpha) * SP_good.
double score_provider(TrustValue trv, double sp_good, double alpha);

struct ProviderScore {
    EntityId provider_id;
    FuzzyMembership sp;
    double v = 0.0;
};

// Scores closer than this are ties and go to the smallest identifier.
inline constexpr double kScoreTieTolerance = 1e-12;

/// Provider with the maximal score. Throws Error(NoCandidates) when empty.
EntityId select_target(std::span<const ProviderScore> scores);

} // namespace ctrust
