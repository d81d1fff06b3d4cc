#include <doctest.h>

#include <sstream>

#include "ctrust/engine.hpp"
#include "ctrust/scenario.hpp"
#include "unit/support.hpp"

using namespace ctrust;
using namespace ctrust::sim;

namespace {

const char* kSmall = R"({
  "name": "small",
  "seed": 1,
  "ticks": 4,
  "service_types": [
    { "id": "printing", "attributes": ["speed"],
      "critical_contexts": [ { "context": "distance", "op": "<=", "bound": 1.0 } ] }
  ],
  "entities": [
    { "id": "r", "role": "requester", "context": { "x": 0, "y": 0 } },
    { "id": "open", "role": "provider", "context": { "x": 0.5, "y": 0 },
      "capabilities": [ { "service_type": "printing", "values": { "speed": 0.7 } } ] },
    { "id": "closed", "role": "provider", "context": { "x": 0, "y": 0.5 },
      "policy": { "deny": ["r"] },
      "capabilities": [ { "service_type": "printing", "values": { "speed": 0.9 } } ] }
  ],
  "episodes": [ { "tick": 2, "requester": "r", "service_type": "printing", "thresholds": { "speed": 0.5 } } ]
})";

std::string csv_of(const std::string& fixture_name) {
    return run(load_scenario(testing::fixture(fixture_name))).to_csv();
}

} // namespace

TEST_CASE("behavior models") {
    Rng rng(1);
    const std::vector<double> promised{0.8, 0.6};
    CHECK(deliver(Honest{0.0}, promised, 0, rng) == promised);
    CHECK(deliver(Malicious{0.0}, promised, 0, rng) == std::vector{0.0, 0.0});
    CHECK(deliver(Malicious{0.5}, std::vector{0.8}, 0, rng)[0] == doctest::Approx(0.4));
    CHECK(deliver(Degrading{5, 0.1}, std::vector{0.8}, 5, rng)[0] == doctest::Approx(0.8));
    CHECK(deliver(Degrading{5, 0.1}, std::vector{0.8}, 10, rng)[0] == doctest::Approx(0.4));
    CHECK(deliver(Degrading{5, 0.1}, std::vector{0.8}, 30, rng)[0] == 0.0);
    CHECK(deliver(DishonestRecommender{1.0}, promised, 0, rng) == promised);
    for (int i = 0; i < 1000; ++i) {
        for (double v : deliver(Honest{0.5}, promised, 0, rng)) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    CHECK(recommendation_bias(DishonestRecommender{-0.5}) == -0.5);
    CHECK(recommendation_bias(Honest{}) == 0.0);
    CHECK(behavior_name(Malicious{}) == "malicious");
}

TEST_CASE("per-entity streams depend only on seed and id") {
    auto a1 = entity_stream(7, "a");
    auto a2 = entity_stream(7, "a");
    auto b = entity_stream(7, "b");
    auto a_other = entity_stream(8, "a");
    const auto x = a1();
    CHECK(x == a2());
    CHECK(x != b());
    CHECK(x != a_other());
    CHECK(stable_hash("abc") == stable_hash("abc"));
}

TEST_CASE("scenario parsing normalizes raw values") {
    const auto s = load_scenario(testing::fixture("honest_convergence.json"));
    CHECK(s.violations().empty());
    REQUIRE(s.episodes.size() == 20);
    CHECK(s.episodes[0].request.attrs[0].tv == doctest::Approx(0.5));
    const auto* h = s.find_entity("honest");
    REQUIRE(h);
    CHECK(h->capabilities[0].values.at("speed") == doctest::Approx(0.8));
    CHECK(h->policy.unassigned(s.service_types[0]).empty());
}

TEST_CASE("scenario violations") {
    const auto w = load_scenario(testing::fixture("bad_weights.json"));
    const auto v = w.violations();
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("Σ w_j = 1") != std::string::npos);
    CHECK_FALSE(load_scenario(testing::fixture("duplicate_id.json")).violations().empty());
    CHECK_THROWS_AS(parse_scenario("{ broken"), Error);
    CHECK_THROWS_AS(load_scenario(testing::fixture("does_not_exist.json")), Error);

    auto late = parse_scenario(kSmall);
    late.episodes[0].tick = 9;
    CHECK_FALSE(late.violations().empty());
    CHECK_THROWS_AS(World{late}, Error);
}

TEST_CASE("overrides") {
    auto s = parse_scenario(kSmall);
    apply_override(s, "decay_base", "0.5");
    apply_override(s, "detect_dishonest", "false");
    apply_override(s, "seed", "99");
    CHECK(s.params.decay_base == 0.5);
    CHECK_FALSE(s.params.detect_dishonest);
    CHECK(s.seed == 99);
    CHECK_THROWS_AS(apply_override(s, "nonsense", "1"), Error);
    CHECK_THROWS_AS(apply_override(s, "alpha", "abc"), Error);
}

TEST_CASE("quiet ticks only move the clock") {
    World w(parse_scenario(kSmall));
    const auto before = w.entity("r").store.to_json();
    w.step();
    CHECK(w.now() == 1);
    CHECK(w.messages().empty());
    CHECK(w.metrics().size() == 0);
    CHECK(w.entity("r").store.to_json() == before);
}

TEST_CASE("an episode appends exactly one interaction and skips the gated provider") {
    World w(parse_scenario(kSmall));
    w.step();
    w.step();
    w.step();
    REQUIRE(w.last_episodes().size() == 1);
    const auto& ep = w.last_episodes()[0];
    CHECK(ep.outcome == EpisodeOutcome::ProvideSettled);
    REQUIRE(ep.offers.size() == 1);
    CHECK(ep.offers[0].provider_id == "open");
    CHECK(w.entity("r").store.interactions().size() == 1);
    w.run_to_end();
    CHECK(w.now() == 4);
    CHECK(w.metrics().episode_count() == 1);
}

TEST_CASE("domains include a residual remainder") {
    World w(load_scenario(testing::fixture("adversary.json")));
    const auto ds = w.domains_for("alice");
    REQUIRE(ds.size() == 2);
    CHECK(ds[0].members == std::set<EntityId>{"honest", "malicious"});
    CHECK(ds[1].members == std::set<EntityId>{"bob"});
}

TEST_CASE("scenario without episodes logs no episode rows") {
    auto s = parse_scenario(kSmall);
    s.episodes.clear();
    CHECK(run(s).episode_count() == 0);
}

TEST_CASE("every scheduled episode yields one episode row") {
    for (const char* f : {"mixed_noisy.json", "adversary.json", "dishonest_recommender.json"}) {
        const auto s = load_scenario(testing::fixture(f));
        CHECK(run(s).episode_count() == s.episodes.size());
    }
}

TEST_CASE("runs are deterministic") {
    CHECK(csv_of("mixed_noisy.json") == csv_of("mixed_noisy.json"));
    auto s = load_scenario(testing::fixture("mixed_noisy.json"));
    const auto base = run(s).to_csv();
    s.seed += 1;
    CHECK(run(s).to_csv() != base);
}

TEST_CASE("honest provider reaches full trust within the adequacy window") {
    const auto s = load_scenario(testing::fixture("honest_convergence.json"));
    const auto t = run(s).trajectory("requester", "honest");
    std::size_t settled = 0;
    for (const auto& r : t) {
        if (r.outcome != outcome::kProvideSettled) continue;
        ++settled;
        if (settled >= static_cast<std::size_t>(s.params.adequacy_min_records)) CHECK(*r.trv == 1.0);
    }
    CHECK(settled == 20);
}

TEST_CASE("malicious provider ends below the honest one") {
    const auto rep =
        RunReport::from_log(run(load_scenario(testing::fixture("adversary.json"))), "adv", 30);
    CHECK(rep.final_trv.at({"alice", "malicious"}) < rep.final_trv.at({"alice", "honest"}));
}

TEST_CASE("metrics CSV round trip") {
    const auto log = run(load_scenario(testing::fixture("adversary.json")));
    std::istringstream in(log.to_csv());
    const auto back = MetricsLog::read_csv(in);
    CHECK(back.rows() == log.rows());

    std::istringstream bad(std::string(kCsvHeader) + "\n0,a,b,0.5,,,,a,evaluated\n1,a,b,zz,,,,a,evaluated\n");
    try {
        (void)MetricsLog::read_csv(bad);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Parse);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("numbers print in shortest round-trip form") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-0.44007168585938067) == "-0.44007168585938067");
}

TEST_CASE("seeded trust records must name known entities") {
    auto s = parse_scenario(kSmall);
    s.entities[0].trust_records.push_back(TrustRecord{"printing", {"speed"}, TrustValue(0.5), 0, "ghost"});
    s.entities[1].trust_records.push_back(TrustRecord{"printing", {"speed"}, TrustValue(0.5), 0, "open"});
    const auto v = s.violations();
    CHECK(v.size() == 2);
}
