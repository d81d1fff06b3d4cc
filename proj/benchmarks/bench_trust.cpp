#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "ctrust/engine.hpp"
#include "ctrust/fuzzy.hpp"
#include "ctrust/trust.hpp"

using namespace ctrust;

static void BM_DirectTrust(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> sd(-1.0, 1.0);
    std::vector<InteractionRecord> history;
    for (Tick t = 0; t < static_cast<Tick>(state.range(0)); ++t) {
        history.push_back({"p", "s", {}, {}, sd(rng), t});
    }
    const TrustParams params;
    const Tick now = history.back().t_occ;
    for (auto _ : state) benchmark::DoNotOptimize(direct_trust(history, now, params));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DirectTrust)->Range(8, 4096);

static void BM_IndirectTrust(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::vector<Recommendation> recs;
    for (int i = 0; i < state.range(0); ++i) {
        recs.push_back({"r" + std::to_string(i), TrustValue(u(rng)), TrustValue(u(rng))});
    }
    for (auto _ : state) benchmark::DoNotOptimize(indirect_trust(recs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IndirectTrust)->Range(8, 4096);

static void BM_SelectTarget(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const AttributeWeights weights({0.5, 0.3, 0.2});
    std::vector<ProviderScore> scores;
    for (int i = 0; i < state.range(0); ++i) {
        std::vector<FuzzyMembership> rows{membership(u(rng)), membership(u(rng)), membership(u(rng))};
        const auto sp = evaluate_provider(weights, rows);
        scores.push_back({"p" + std::to_string(i), sp, score_provider(TrustValue(u(rng)), sp.good, 0.5)});
    }
    for (auto _ : state) benchmark::DoNotOptimize(select_target(scores));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SelectTarget)->Range(8, 4096);

static void BM_ScenarioRun(benchmark::State& state) {
    const auto scenario = sim::load_scenario(std::string(CTRUST_FIXTURE_DIR) + "/mixed_noisy.json");
    for (auto _ : state) benchmark::DoNotOptimize(sim::run(scenario));
}
BENCHMARK(BM_ScenarioRun)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
