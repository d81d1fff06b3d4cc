#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctrust/requester.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(CTRUST_FIXTURE_DIR) / name;
}

// Scripted network: canned offers, solicitation answers and deliveries.
class FakeNetwork final : public ctrust::Network {
public:
    std::map<ctrust::EntityId, ctrust::ProviderOffer> offers;
    // (recommender, subject) -> answer
    std::map<std::pair<ctrust::EntityId, ctrust::EntityId>, ctrust::ProviderOffer> opinions;
    std::map<ctrust::EntityId, ctrust::Delivery> deliveries;
    std::map<ctrust::EntityId, ctrust::ContextDescriptor> contexts;

    std::vector<ctrust::EntityId> requested;
    std::vector<std::pair<ctrust::EntityId, ctrust::EntityId>> solicited;
    std::vector<ctrust::EntityId> invoked;

    std::optional<ctrust::ProviderOffer> request(const ctrust::EntityId&, const ctrust::EntityId& to,
                                                 const ctrust::ServiceRequest&) override {
        requested.push_back(to);
        auto it = offers.find(to);
        if (it == offers.end()) return std::nullopt;
        return it->second;
    }

    std::optional<ctrust::ProviderOffer> solicit(const ctrust::EntityId&, const ctrust::EntityId& to,
                                                 const ctrust::EntityId& subject,
                                                 const ctrust::ServiceRequest&) override {
        solicited.emplace_back(to, subject);
        auto it = opinions.find({to, subject});
        if (it == opinions.end()) return std::nullopt;
        return it->second;
    }

    std::optional<ctrust::Delivery> invoke(const ctrust::EntityId&, const ctrust::EntityId& to,
                                           const ctrust::ServiceRequest&) override {
        invoked.push_back(to);
        auto it = deliveries.find(to);
        if (it == deliveries.end()) return std::nullopt;
        return it->second;
    }

    ctrust::ContextDescriptor observe(const ctrust::EntityId&, const ctrust::EntityId& subject) override {
        auto it = contexts.find(subject);
        return it == contexts.end() ? ctrust::ContextDescriptor{} : it->second;
    }
};

inline ctrust::ProviderOffer provide(const ctrust::EntityId& id, std::vector<double> rv) {
    return ctrust::ProviderOffer{id, ctrust::OfferKind::Provide, std::move(rv), std::nullopt};
}

inline ctrust::ProviderOffer recommend(const ctrust::EntityId& from, const ctrust::EntityId& subject,
                                       double trv, std::vector<double> rv,
                                       const ctrust::ServiceTypeId& type = "printing") {
    ctrust::TrustRecord rec{type, {}, ctrust::TrustValue(trv), 0, subject};
    return ctrust::ProviderOffer{from, ctrust::OfferKind::Recommend, std::move(rv), rec};
}

inline ctrust::ServiceRequest request2(double tv0 = 0.5, double tv1 = 0.5) {
    return ctrust::ServiceRequest{"printing", {{"speed", tv0}, {"quality", tv1}}};
}

inline ctrust::ServiceType printing_service() {
    ctrust::ServiceType s;
    s.id = "printing";
    s.attributes = {{"speed", 0.0, 1.0}, {"quality", 0.0, 1.0}};
    s.weights = {0.5, 0.5};
    s.critical.conditions = {{"distance", ctrust::Comparison::LessEqual, 1.0}};
    return s;
}

} // namespace testing
