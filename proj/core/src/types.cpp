#include "ctrust/types.hpp"

#include <algorithm>
#include <cmath>

namespace ctrust {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::NoDirectEvidence: return "no-direct-evidence";
    case ErrorCode::NoIndirectEvidence: return "no-indirect-evidence";
    case ErrorCode::NoEvidence: return "no-evidence";
    case ErrorCode::NoCandidates: return "no-candidates";
    case ErrorCode::EpisodeFailed: return "episode-failed";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

TrustValue::TrustValue(double v) : value_(v) {
    if (!(v >= -1.0 && v <= 1.0)) {
        fail(ErrorCode::InvalidInput,
             "trust value " + std::to_string(v) + " outside [-1, 1]");
    }
}

TrustValue TrustValue::clamped(double v) {
    if (std::isnan(v)) {
        fail(ErrorCode::InvalidInput, "trust value is NaN");
    }
    return TrustValue(std::clamp(v, -1.0, 1.0));
}

} // namespace ctrust
