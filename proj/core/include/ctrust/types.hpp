#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ctrust/error.hpp"

namespace ctrust {

using EntityId = std::string;
using ServiceTypeId = std::string;

// Simulation time. Interactions are ordered by tick; decay exponents use tick
// differences directly.
using Tick = std::uint64_t;

// Context name -> scalar (distance in km, delay in ms, ...).
using ContextDescriptor = std::map<std::string, double>;

/// A trust quantity in [-1, +1]. Zero means "no information", positive
/// values trustworthy and negative values untrustworthy.
class TrustValue {
public:
    constexpr TrustValue() noexcept = default;

    /// Throws Error(InvalidInput) when `v` is outside [-1, +1] or NaN.
    explicit TrustValue(double v);

    /// Saturates `v` into [-1, +1]. NaN is rejected.
    static TrustValue clamped(double v);

    static constexpr TrustValue zero() noexcept { return TrustValue{}; }

    constexpr double value() const noexcept { return value_; }
    constexpr explicit operator double() const noexcept { return value_; }

    friend constexpr auto operator<=>(TrustValue, TrustValue) noexcept = default;

private:
    double value_ = 0.0;
};

// One entry of the interaction history: what was delivered, where, how
// satisfying it was and when it happened.
struct InteractionRecord {
    EntityId provider_id;
    ServiceTypeId service_type;
    std::vector<double> service_attrs; // delivered values, normalized
    ContextDescriptor context_attrs;
    double satisfaction = 0.0; // [-1, +1]
    Tick t_occ = 0;

    bool operator==(const InteractionRecord&) const = default;
};

// Persisted trust of the owner in one provider for one service type.
struct TrustRecord {
    ServiceTypeId service_type;
    std::vector<std::string> service_attrs; // attribute names
    TrustValue trv;
    Tick last_updated = 0;
    EntityId provider_id;

    bool operator==(const TrustRecord&) const = default;
};

struct AccuracySample {
    double delta = 0.0; // similarity distance, [0, 1]
    Tick tick = 0;

    bool operator==(const AccuracySample&) const = default;
};

struct RecommenderProfile {
    EntityId recommender_id;
    TrustValue rt;
    std::vector<AccuracySample> accuracy_history;
    // Every trust value this recommender has reported to the owner; input to
    // dishonesty detection.
    std::vector<TrustValue> recommendations;

    bool operator==(const RecommenderProfile&) const = default;
};

} // namespace ctrust
