#include "ctrust/trust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ctrust {

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

double mean_abs_difference(std::span<const double> a, std::span<const double> b,
                           const char* what) {
    if (a.empty() || a.size() != b.size()) {
        std::ostringstream msg;
        msg << what << ": vectors must be non-empty and of equal length (got " << a.size()
            << " and " << b.size() << ")";
        fail(ErrorCode::InvalidInput, msg.str());
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!in_unit(a[i]) || !in_unit(b[i])) {
            std::ostringstream msg;
            msg << what << ": component " << i << " outside [0, 1]";
            fail(ErrorCode::InvalidInput, msg.str());
        }
        sum += std::abs(a[i] - b[i]);
    }
    return sum / static_cast<double>(a.size());
}

} // namespace

std::vector<std::string> TrustParams::violations() const {
    std::vector<std::string> out;
    if (!(decay_base > 0.0 && decay_base < 1.0))
        out.emplace_back("decay_base must lie strictly inside (0, 1)");
    if (!in_unit(alpha)) out.emplace_back("alpha must lie in [0, 1]");
    if (!in_unit(beta)) out.emplace_back("beta must lie in [0, 1]");
    if (!(error_apt > 0.0 && error_apt <= 1.0))
        out.emplace_back("error_apt must lie in (0, 1]");
    if (adequacy_min_records < 1) out.emplace_back("adequacy_min_records must be positive");
    if (!(dishonesty_lo < dishonesty_hi))
        out.emplace_back("dishonesty band requires lo < hi");
    if (dishonesty_lo < -1.0 || dishonesty_hi > 1.0)
        out.emplace_back("dishonesty band must lie inside [-1, 1]");
    if (dishonesty_min_count < 1) out.emplace_back("dishonesty_min_count must be positive");
    return out;
}

void TrustParams::validate() const {
    auto v = violations();
    if (v.empty()) return;
    std::string msg = "invalid trust parameters:";
    for (const auto& s : v) msg += "\n  " + s;
    fail(ErrorCode::InvalidConfig, msg);
}

double satisfaction_distance(std::span<const double> expected,
                             std::span<const double> provided) {
    return mean_abs_difference(expected, provided, "satisfaction_distance");
}

double satisfaction_degree(double distance) {
    if (!in_unit(distance)) {
        fail(ErrorCode::InvalidInput, "satisfaction_degree: distance outside [0, 1]");
    }
    return 1.0 - 2.0 * distance;
}

TrustValue direct_trust(std::span<const InteractionRecord> history, Tick t_cur,
                        const TrustParams& params) {
    if (history.empty()) {
        fail(ErrorCode::NoDirectEvidence, "direct_trust: empty interaction history");
    }
    if (!(params.decay_base > 0.0 && params.decay_base < 1.0)) {
        fail(ErrorCode::InvalidConfig, "direct_trust: decay_base must lie in (0, 1)");
    }

    // Weights are taken relative to the freshest record. The common factor
    // cancels in the ratio and keeps long histories from underflowing.
    Tick min_age = std::numeric_limits<Tick>::max();
    for (const auto& r : history) {
        if (r.t_occ > t_cur) {
            fail(ErrorCode::InvalidInput, "direct_trust: interaction lies in the future");
        }
        if (!(r.satisfaction >= -1.0 && r.satisfaction <= 1.0)) {
            fail(ErrorCode::InvalidInput, "direct_trust: satisfaction outside [-1, 1]");
        }
        min_age = std::min(min_age, t_cur - r.t_occ);
    }

    double weighted = 0.0;
    double total = 0.0;
    for (const auto& r : history) {
        const double age = static_cast<double>(t_cur - r.t_occ - min_age);
        const double w = std::pow(params.decay_base, age);
        weighted += w * r.satisfaction;
        total += w;
    }
    return TrustValue::clamped(weighted / total);
}

TrustValue init_recommender_trust(std::span<const TrustRecord> records) {
    if (records.empty()) return new_entity_trust();
    double sum = 0.0;
    for (const auto& r : records) sum += r.trv.value();
    return TrustValue::clamped(sum / static_cast<double>(records.size()));
}

double similarity_distance(std::span<const double> provided,
                           std::span<const double> recommended) {
    return mean_abs_difference(provided, recommended, "similarity_distance");
}

double update_factor(double delta, double error_apt) {
    if (!(error_apt > 0.0)) {
        fail(ErrorCode::InvalidConfig, "update_factor: error_apt must be positive");
    }
    if (!in_unit(delta)) {
        fail(ErrorCode::InvalidInput, "update_factor: delta outside [0, 1]");
    }
    return 1.0 - delta / error_apt;
}

TrustValue update_recommender_trust(TrustValue rt_old, double uf) {
    const double raw = (1.0 + uf) * rt_old.value();
    if (raw >= 1.0) return TrustValue(1.0);
    if (raw <= -1.0) return TrustValue(-1.0);
    return TrustValue(raw);
}

TrustValue indirect_trust(std::span<const Recommendation> recommendations) {
    double weighted = 0.0;
    double total = 0.0;
    for (const auto& rec : recommendations) {
        if (rec.rt.value() <= 0.0) continue;
        weighted += rec.rt.value() * rec.trv.value();
        total += rec.rt.value();
    }
    if (total <= 0.0) {
        fail(ErrorCode::NoIndirectEvidence,
             "indirect_trust: no recommendation from a positively trusted recommender");
    }
    return TrustValue::clamped(weighted / total);
}

TrustValue combine_trust(std::optional<TrustValue> dt, std::optional<TrustValue> it,
                         const TrustParams& params, bool adequate_history) {
    if (!dt && !it) {
        fail(ErrorCode::NoEvidence, "combine_trust: neither direct nor indirect trust");
    }
    if (dt && (adequate_history || !it)) return *dt;
    if (!dt) return *it;
    return TrustValue::clamped(params.beta * dt->value() + (1.0 - params.beta) * it->value());
}

std::string_view to_string(TrustMethod method) noexcept {
    switch (method) {
    case TrustMethod::Direct: return "direct";
    case TrustMethod::Indirect: return "indirect";
    case TrustMethod::Combined: return "combined";
    }
    return "unknown";
}

TrustMethod select_method(int history_count, bool unexpired, const TrustParams& params) {
    if (history_count <= 0) return TrustMethod::Indirect;
    if (history_count >= params.adequacy_min_records && unexpired) return TrustMethod::Direct;
    return TrustMethod::Combined;
}

bool detect_dishonest(std::span<const TrustValue> recommended, const TrustParams& params) {
    if (params.dishonesty_min_count < 1 ||
        recommended.size() < static_cast<std::size_t>(params.dishonesty_min_count)) {
        return false;
    }
    double sum = 0.0;
    for (auto v : recommended) sum += v.value();
    const double mean = sum / static_cast<double>(recommended.size());
    return mean < params.dishonesty_lo || mean > params.dishonesty_hi;
}

} // namespace ctrust
