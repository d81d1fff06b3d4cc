#pragma once

#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ctrust/types.hpp"

namespace ctrust::sim {

// Delivers what it promised, perturbed by Gaussian noise.
struct Honest {
    double jitter = 0.0; // standard deviation
};

// Honest until `start`, then loses `slope` of the promised quality per tick.
struct Degrading {
    Tick start = 0;
    double slope = 0.0;
};

// Delivers only `fraction` of every promised value.
struct Malicious {
    double fraction = 0.5;
};

// Serves honestly but shifts every trust value it recommends by `bias`.
struct DishonestRecommender {
    double bias = 1.0;
};

using BehaviorModel = std::variant<Honest, Degrading, Malicious, DishonestRecommender>;

std::string behavior_name(const BehaviorModel& behavior);

/// Bias added to recommended trust values (zero except for dishonest
/// recommenders).
double recommendation_bias(const BehaviorModel& behavior);

using Rng = std::mt19937_64;

/// Values actually delivered for `promised` at `tick`, clamped to [0, 1].
/// Only Honest with positive jitter draws from `rng`.
std::vector<double> deliver(const BehaviorModel& behavior, std::span<const double> promised,
                            Tick tick, Rng& rng);

/// Stable 64-bit FNV-1a hash; used to split the scenario seed per entity.
std::uint64_t stable_hash(std::string_view text) noexcept;

/// Independent stream for `entity`, derived from the scenario seed only.
Rng entity_stream(std::uint64_t seed, std::string_view entity);

} // namespace ctrust::sim
