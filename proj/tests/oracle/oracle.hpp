#pragma once

// Naive reference implementations of the trust and selection formulas. Plain
// loops over plain vectors; nothing here includes or calls library code.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

// Mean absolute component difference.
inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); i++) {
        double d = a[i] - b[i];
        if (d < 0) d = -d;
        sum = sum + d;
    }
    return sum / static_cast<double>(a.size());
}

inline double satisfaction(const std::vector<double>& expected, const std::vector<double>& provided) {
    return 1.0 - 2.0 * distance(expected, provided);
}

struct Interaction {
    double sd;
    std::uint64_t t;
};

// Weight W^(t_cur - t) computed by repeated multiplication.
inline double decay_weight(double w, std::uint64_t age) {
    double r = 1.0;
    for (std::uint64_t k = 0; k < age; k++) r = r * w;
    return r;
}

inline double direct_trust(const std::vector<Interaction>& history, std::uint64_t t_cur, double w) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& h : history) {
        const double weight = decay_weight(w, t_cur - h.t);
        num = num + weight * h.sd;
        den = den + weight;
    }
    return num / den;
}

inline double recommender_trust_init(const std::vector<double>& trvs) {
    if (trvs.empty()) return 0.0;
    double s = 0.0;
    for (double x : trvs) s = s + x;
    return s / static_cast<double>(trvs.size());
}

inline double update_factor(double delta, double error_apt) { return 1.0 - delta / error_apt; }

inline double updated_rt(double rt_old, double uf) {
    double v = (1.0 + uf) * rt_old;
    if (v > 1.0) v = 1.0;
    if (v < -1.0) v = -1.0;
    return v;
}

struct Rec {
    double rt;
    double trv;
};

// Only recommenders with RT > 0 count. `ok` is false when none does.
inline double indirect_trust(const std::vector<Rec>& recs, bool* ok = nullptr) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& r : recs) {
        if (r.rt > 0.0) {
            num = num + r.rt * r.trv;
            den = den + r.rt;
        }
    }
    if (ok) *ok = den > 0.0;
    return den > 0.0 ? num / den : 0.0;
}

inline double blend(double dt, double it, double beta) { return beta * dt + (1.0 - beta) * it; }

struct Levels {
    double good;
    double average;
    double bad;
};

inline Levels levels(double v) {
    Levels l{0.0, 0.0, 0.0};
    if (v <= 0.5) {
        l.bad = 1.0 - 2.0 * v;
        l.average = 2.0 * v;
    } else {
        l.good = 2.0 * v - 1.0;
        l.average = 2.0 - 2.0 * v;
    }
    return l;
}

inline Levels weighted_levels(const std::vector<double>& w, const std::vector<Levels>& rows) {
    Levels out{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < w.size(); j++) {
        out.good = out.good + w[j] * rows[j].good;
        out.average = out.average + w[j] * rows[j].average;
        out.bad = out.bad + w[j] * rows[j].bad;
    }
    return out;
}

inline double score(double trv, double sp_good, double alpha) {
    return alpha * trv + (1.0 - alpha) * sp_good;
}

// Argmax over integer scores; the first of equal maxima wins, so callers pass
// ids in ascending order.
inline std::size_t argmax(const std::vector<long long>& scores) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); i++) {
        if (scores[i] > scores[best]) best = i;
    }
    return best;
}

inline bool dishonest(const std::vector<double>& recommended, double lo, double hi, int min_count) {
    if (static_cast<int>(recommended.size()) < min_count) return false;
    double s = 0.0;
    for (double x : recommended) s = s + x;
    const double mean = s / static_cast<double>(recommended.size());
    return mean < lo || mean > hi;
}

inline double relative_error(double got, double want) {
    const double diff = std::fabs(got - want);
    const double scale = std::fabs(want);
    return scale > 1.0 ? diff / scale : diff;
}

} // namespace oracle
