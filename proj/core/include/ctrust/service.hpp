#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctrust/context.hpp"
#include "ctrust/types.hpp"

namespace ctrust {

struct AttributeThreshold {
    std::string name;
    double tv = 0.0; // normalized threshold

    bool operator==(const AttributeThreshold&) const = default;
};

// A service type plus one threshold per attribute.
struct ServiceRequest {
    ServiceTypeId service_type;
    std::vector<AttributeThreshold> attrs;

    std::vector<std::string> attribute_names() const;
    std::vector<double> thresholds() const;

    /// Throws Error(InvalidInput) on an empty attribute list or a threshold
    /// outside [0, 1].
    void validate() const;
};

enum class OfferKind { Provide, Recommend };

// A provider's answer to a request: either its own real values, or a trust
// record naming another provider together with the values it expects that
// provider to deliver.
struct ProviderOffer {
    EntityId provider_id; // who answered
    OfferKind kind = OfferKind::Provide;
    std::vector<double> rv; // aligned with the request attributes
    std::optional<TrustRecord> recommended;
};

// Attribute with the raw-unit bounds used for normalization.
struct AttributeSpec {
    std::string name;
    double min = 0.0;
    double max = 1.0;

    /// Maps a raw value onto [0, 1], saturating outside the bounds.
    double normalize(double raw) const;
};

struct ServiceType {
    ServiceTypeId id;
    std::vector<AttributeSpec> attributes;
    std::vector<double> weights;     // one per attribute, summing to 1
    ContextPredicate critical;       // domain membership for this type
    std::vector<RecommenderContextRule> recommender_rules;

    std::vector<std::string> attribute_names() const;
};

} // namespace ctrust
