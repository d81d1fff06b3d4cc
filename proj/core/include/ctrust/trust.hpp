#pragma once

// Trust calculus: satisfaction, time-decayed direct trust, recommender trust
// initialization and update, recommender-weighted indirect trust, the
// direct/indirect blend and the method selection that chooses between them.
//
// Every function here is a pure function of its arguments.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctrust/types.hpp"

namespace ctrust {

struct TrustParams {
    double decay_base = 0.9; // per-tick weight of an interaction, (0, 1)
    double alpha = 0.5;      // trust vs. offered quality in provider scoring
    double beta = 0.5;       // direct vs. indirect blend
    double error_apt = 0.2;  // acceptable recommendation error, (0, 1]
    int adequacy_min_records = 3;
    Tick record_ttl = 100;
    double dishonesty_lo = -0.8;
    double dishonesty_hi = 0.8;
    int dishonesty_min_count = 3;
    bool detect_dishonest = true;

    /// Human-readable list of violated constraints; empty when valid.
    std::vector<std::string> violations() const;

    /// Throws Error(InvalidConfig) listing every violation.
    void validate() const;
};

// Mean absolute difference of two normalized vectors. Shared by satisfaction
// (expected vs. provided) and recommender accuracy (provided vs. recommended).
double satisfaction_distance(std::span<const double> expected,
                             std::span<const double> provided);

/// Signed satisfaction from a distance: 0 -> +1, 1 -> -1.
double satisfaction_degree(double distance);

/// Time-decayed mean of the records' satisfaction.
/// Throws Error(NoDirectEvidence) on an empty history.
TrustValue direct_trust(std::span<const InteractionRecord> history, Tick t_cur,
                        const TrustParams& params);

/// Initial recommender trust: mean TRV of the owner's records about the
/// recommender acting as a provider. Empty -> 0.
TrustValue init_recommender_trust(std::span<const TrustRecord> records);

double similarity_distance(std::span<const double> provided,
                           std::span<const double> recommended);

/// UF = 1 - delta / error_apt. Negative once delta exceeds error_apt.
double update_factor(double delta, double error_apt);

/// (1 + uf) * rt_old saturated to [-1, +1].
TrustValue update_recommender_trust(TrustValue rt_old, double uf);

struct Recommendation {
    EntityId recommender_id;
    TrustValue rt;  // weight: the owner's trust in the recommender
    TrustValue trv; // the trust value being recommended
};

/// RT-weighted mean of the recommended values over recommenders with RT > 0.
/// Throws Error(NoIndirectEvidence) when none qualifies.
TrustValue indirect_trust(std::span<const Recommendation> recommendations);

/// Blends direct and indirect trust.
///  - adequate history: DT (beta forced to 1)
///  - DT absent: IT (beta forced to 0)
///  - IT absent: DT
///  - otherwise beta * DT + (1 - beta) * IT
/// Throws Error(NoEvidence) when both are absent.
TrustValue combine_trust(std::optional<TrustValue> dt, std::optional<TrustValue> it,
                         const TrustParams& params, bool adequate_history);

enum class TrustMethod { Direct, Indirect, Combined };

std::string_view to_string(TrustMethod method) noexcept;

TrustMethod select_method(int history_count, bool unexpired, const TrustParams& params);

/// A recommender is dishonest once it has made at least dishonesty_min_count
/// recommendations and their mean lies outside [dishonesty_lo, dishonesty_hi].
bool detect_dishonest(std::span<const TrustValue> recommended, const TrustParams& params);

/// Trust assigned to an entity nobody knows anything about.
constexpr TrustValue new_entity_trust() noexcept { return TrustValue::zero(); }

} // namespace ctrust
