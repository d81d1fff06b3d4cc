#include <doctest.h>

#include <random>
#include <vector>

#include "ctrust/provider.hpp"

using namespace ctrust;

namespace {

ServiceRequest req(std::vector<double> tv) {
    ServiceRequest r{"printing", {}};
    for (std::size_t i = 0; i < tv.size(); ++i) r.attrs.push_back({"a" + std::to_string(i), tv[i]});
    return r;
}

Capability cap(std::vector<double> rv) {
    Capability c{"printing", {}};
    for (std::size_t i = 0; i < rv.size(); ++i) c.values["a" + std::to_string(i)] = rv[i];
    return c;
}

} // namespace

TEST_CASE("privacy gate") {
    PrivacyPolicy open;
    CHECK(local_policy_gate("anyone", req({0.5}), open) == GateDecision::Pass);

    PrivacyPolicy secret;
    secret.attr_privacy_levels["a0"] = PrivacyLevel::Private;
    secret.clearance["r"] = PrivacyLevel::Restricted;
    CHECK(local_policy_gate("r", req({0.5}), secret) == GateDecision::Reject);
    secret.clearance["r"] = PrivacyLevel::Private;
    CHECK(local_policy_gate("r", req({0.5}), secret) == GateDecision::Pass);

    PrivacyPolicy deny;
    deny.deny.insert("r");
    CHECK(local_policy_gate("r", req({0.5}), deny) == GateDecision::Reject);
    CHECK(local_policy_gate("s", req({0.5}), deny) == GateDecision::Pass);

    PrivacyPolicy allow;
    allow.allow_only = std::set<EntityId>{"s"};
    CHECK(local_policy_gate("r", req({0.5}), allow) == GateDecision::Reject);
    CHECK(local_policy_gate("s", req({0.5}), allow) == GateDecision::Pass);

    PrivacyPolicy ctx;
    ctx.context_privacy_levels["distance"] = PrivacyLevel::Restricted;
    const std::vector<std::string> critical{"distance"};
    CHECK(local_policy_gate("r", req({0.5}), ctx, critical) == GateDecision::Reject);
    ctx.default_clearance = PrivacyLevel::Restricted;
    CHECK(local_policy_gate("r", req({0.5}), ctx, critical) == GateDecision::Pass);
}

TEST_CASE("request processing branches") {
    StoreView empty("p");
    const auto provide = process_request(req({0.5, 0.5}), nullptr, empty, 0.3);
    CHECK(provide.kind == ProcessResult::Kind::NoResponse);

    const auto c = cap({0.9, 0.8});
    const auto served = process_request(req({0.5, 0.5}), &c, empty, 0.3);
    CHECK(served.kind == ProcessResult::Kind::Provide);
    CHECK(served.rv == std::vector{0.9, 0.8});

    StoreView known("p");
    known.upsert_trust_record(TrustRecord{"printing", {"a0"}, TrustValue(0.7), 0, "other"}, 0);
    const auto weak = cap({0.3});
    const auto rec = process_request(req({0.5}), &weak, known, 0.3);
    CHECK(rec.kind == ProcessResult::Kind::Recommend);
    REQUIRE(rec.record);
    CHECK(rec.record->provider_id == "other");
    CHECK(rec.record->trv.value() >= 0.3);

    const auto silent = process_request(req({0.5}), &weak, empty, 0.3);
    CHECK(silent.kind == ProcessResult::Kind::NoResponse);

    const auto edge = cap({0.5});
    CHECK(process_request(req({0.5}), &edge, empty, 0.3).kind == ProcessResult::Kind::Provide);
}

TEST_CASE("provide iff every real value meets its threshold") {
    std::mt19937_64 rng(44);
    std::uniform_int_distribution<int> n(1, 5), grid(0, 10);
    StoreView empty("p");
    for (int i = 0; i < 5000; ++i) {
        const int k = n(rng);
        std::vector<double> rv, tv;
        bool all = true;
        for (int j = 0; j < k; ++j) {
            rv.push_back(grid(rng) / 10.0);
            tv.push_back(grid(rng) / 10.0);
            if (rv.back() < tv.back()) all = false;
        }
        const auto c = cap(rv);
        const auto r = process_request(req(tv), &c, empty, 0.3);
        CHECK((r.kind == ProcessResult::Kind::Provide) == all);
    }
}

TEST_CASE("rejected requesters learn nothing") {
    ProviderAgent agent;
    agent.id = "p";
    agent.capabilities.emplace("printing", cap({0.9}));
    agent.policy.deny.insert("r");
    StoreView store("p");
    store.upsert_trust_record(TrustRecord{"printing", {"a0"}, TrustValue(0.9), 0, "other"}, 0);
    CHECK_FALSE(agent.respond("r", req({0.5}), store));
    CHECK_FALSE(agent.respond("r", req({0.99}), store));
    CHECK_FALSE(agent.promise("r", req({0.5})));
    CHECK_FALSE(agent.recommend("r", "other", req({0.5}), store, 0, 100));

    const auto offer = agent.respond("s", req({0.5}), store);
    REQUIRE(offer);
    CHECK(offer->kind == OfferKind::Provide);
    const auto redirect = agent.respond("s", req({0.99}), store);
    REQUIRE(redirect);
    CHECK(redirect->kind == OfferKind::Recommend);
    CHECK(redirect->recommended->provider_id == "other");
    CHECK_FALSE(agent.respond("other", req({0.99}), store));
}

TEST_CASE("recommended values fall back to thresholds") {
    StoreView store("p");
    CHECK(recommended_values(store, "q", req({0.4, 0.6})) == std::vector{0.4, 0.6});
    store.append_interaction(InteractionRecord{"q", "printing", {0.7, 0.2}, {}, 0.0, 1});
    CHECK(recommended_values(store, "q", req({0.4, 0.6})) == std::vector{0.7, 0.2});
    CHECK(recommended_values(store, "q", req({0.4})) == std::vector{0.4});
}

TEST_CASE("dishonest bias shifts only the reported trust value") {
    ProviderAgent agent;
    agent.id = "liar";
    agent.recommendation_bias = 1.0;
    StoreView store("liar");
    store.upsert_trust_record(TrustRecord{"printing", {"a0"}, TrustValue(0.2), 0, "q"}, 0);
    const auto r = agent.recommend("r", "q", req({0.5}), store, 0, 100);
    REQUIRE(r);
    CHECK(r->recommended->trv.value() == 1.0);
    CHECK(r->rv == std::vector{0.5});
    CHECK_FALSE(agent.recommend("r", "q", req({0.5}), store, 500, 100));
}

TEST_CASE("unassigned privacy levels are reported") {
    ServiceType s;
    s.id = "printing";
    s.attributes = {{"speed", 0, 1}, {"quality", 0, 1}};
    s.critical.conditions = {{"distance", Comparison::LessEqual, 1.0}};
    PrivacyPolicy p;
    p.attr_privacy_levels["speed"] = PrivacyLevel::Public;
    const auto missing = p.unassigned(s);
    CHECK(missing == std::vector<std::string>{"quality", "distance"});
}
