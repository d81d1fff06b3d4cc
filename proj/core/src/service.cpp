#include "ctrust/service.hpp"

#include <algorithm>

namespace ctrust {

std::vector<std::string> ServiceRequest::attribute_names() const {
    std::vector<std::string> out;
    out.reserve(attrs.size());
    for (const auto& a : attrs) out.push_back(a.name);
    return out;
}

std::vector<double> ServiceRequest::thresholds() const {
    std::vector<double> out;
    out.reserve(attrs.size());
    for (const auto& a : attrs) out.push_back(a.tv);
    return out;
}

void ServiceRequest::validate() const {
    if (attrs.empty()) {
        fail(ErrorCode::InvalidInput, "service request '" + service_type + "' has no attributes");
    }
    for (const auto& a : attrs) {
        if (!(a.tv >= 0.0 && a.tv <= 1.0)) {
            fail(ErrorCode::InvalidInput,
                 "service request '" + service_type + "': threshold of '" + a.name +
                     "' outside [0, 1]");
        }
    }
}

double AttributeSpec::normalize(double raw) const {
    if (max <= min) return raw >= max ? 1.0 : 0.0;
    return std::clamp((raw - min) / (max - min), 0.0, 1.0);
}

std::vector<std::string> ServiceType::attribute_names() const {
    std::vector<std::string> out;
    out.reserve(attributes.size());
    for (const auto& a : attributes) out.push_back(a.name);
    return out;
}

} // namespace ctrust
