#include <doctest.h>

#include <vector>

#include "ctrust/context.hpp"

using namespace ctrust;

namespace {

ContextPredicate within(double km) {
    return ContextPredicate{{{"distance", Comparison::LessEqual, km}}};
}

} // namespace

TEST_CASE("comparisons parse and print") {
    CHECK(parse_comparison("<=") == Comparison::LessEqual);
    CHECK(parse_comparison(">") == Comparison::Greater);
    CHECK_FALSE(parse_comparison("=="));
    CHECK(to_string(Comparison::GreaterEqual) == ">=");
}

TEST_CASE("conditions need the context to be present") {
    const ContextCondition c{"delay", Comparison::Less, 50};
    CHECK(c.holds({{"delay", 10}}));
    CHECK_FALSE(c.holds({{"delay", 50}}));
    CHECK_FALSE(c.holds({{"distance", 0}}));
    CHECK(ContextPredicate{}.holds({}));
}

TEST_CASE("domain partition by distance") {
    std::vector<EntityContext> es{{"near", {{"distance", 0.5}}}, {"far", {{"distance", 2.0}}}};
    std::vector<DomainSpec> specs{{"close", "printing", within(1.0)}};
    auto ds = partition_domains(es, specs);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].members == std::set<EntityId>{"near"});

    CHECK(partition_domains({}, specs)[0].members.empty());

    std::vector<DomainSpec> all{{"all", "", ContextPredicate{}}};
    CHECK(partition_domains(es, all)[0].members.size() == 2);
}

TEST_CASE("residual domain covers the rest") {
    std::vector<EntityContext> es{{"a", {{"distance", 0.5}}}, {"b", {{"distance", 2.0}}},
                                  {"c", {{"distance", 9.0}}}};
    std::vector<DomainSpec> specs{{"d1", "s1", within(1.0)}, {"d2", "s2", within(3.0)}};
    auto ds = partition_domains(es, specs);
    const auto rest = residual_domain(es, ds);
    CHECK(rest.members == std::set<EntityId>{"c"});
    std::set<EntityId> covered = rest.members;
    for (const auto& d : ds) covered.insert(d.members.begin(), d.members.end());
    CHECK(covered.size() == es.size());
}

TEST_CASE("observed distance comes from coordinates") {
    const auto seen = observe_context({{"x", 0}, {"y", 0}}, {{"x", 3}, {"y", 4}, {"delay", 7}});
    CHECK(seen.at("distance") == doctest::Approx(5.0));
    CHECK(seen.at("delay") == 7);
    const auto raw = observe_context({}, {{"distance", 2.5}});
    CHECK(raw.at("distance") == 2.5);
}

TEST_CASE("context penalty") {
    const auto rules = default_context_rules(within(1.0));
    REQUIRE(rules.size() == 1);
    CHECK(context_penalty(rules, {{"distance", 0.5}}) == 1.0);
    CHECK(context_penalty(rules, {{"distance", 1.5}}) == 0.5);
    std::vector<RecommenderContextRule> two{{within(10.0), 0.5}, {ContextPredicate{}, 0.5}};
    CHECK(context_penalty(two, {{"distance", 1.0}}) == 0.25);
    CHECK(context_penalty({}, {}) == 1.0);
}
