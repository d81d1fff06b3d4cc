#include "ctrust/behavior.hpp"

#include <algorithm>

namespace ctrust::sim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double unit(double v) { return std::clamp(v, 0.0, 1.0); }

} // namespace

std::string behavior_name(const BehaviorModel& behavior) {
    return std::visit(overloaded{
                          [](const Honest&) { return std::string("honest"); },
                          [](const Degrading&) { return std::string("degrading"); },
                          [](const Malicious&) { return std::string("malicious"); },
                          [](const DishonestRecommender&) {
                              return std::string("dishonest_recommender");
                          },
                      },
                      behavior);
}

double recommendation_bias(const BehaviorModel& behavior) {
    if (const auto* d = std::get_if<DishonestRecommender>(&behavior)) return d->bias;
    return 0.0;
}

std::vector<double> deliver(const BehaviorModel& behavior, std::span<const double> promised,
                            Tick tick, Rng& rng) {
    std::vector<double> out(promised.begin(), promised.end());
    std::visit(overloaded{
                   [&](const Honest& h) {
                       if (h.jitter <= 0.0) return;
                       std::normal_distribution<double> noise(0.0, h.jitter);
                       for (auto& v : out) v += noise(rng);
                   },
                   [&](const Degrading& d) {
                       if (tick <= d.start) return;
                       const double factor =
                           unit(1.0 - d.slope * static_cast<double>(tick - d.start));
                       for (auto& v : out) v *= factor;
                   },
                   [&](const Malicious& m) {
                       for (auto& v : out) v *= m.fraction;
                   },
                   [](const DishonestRecommender&) {},
               },
               behavior);
    for (auto& v : out) v = unit(v);
    return out;
}

std::uint64_t stable_hash(std::string_view text) noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Rng entity_stream(std::uint64_t seed, std::string_view entity) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stable_hash(entity)),
                      static_cast<std::uint32_t>(stable_hash(entity) >> 32)};
    return Rng(seq);
}

} // namespace ctrust::sim
