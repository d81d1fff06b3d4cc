#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctrust {

enum class ErrorCode {
    InvalidInput,       // argument outside its documented domain
    InvalidConfig,      // parameter set violates its invariants
    NoDirectEvidence,   // empty interaction history
    NoIndirectEvidence, // no recommendation with positive recommender trust
    NoEvidence,         // neither direct nor indirect trust available
    NoCandidates,       // nothing to select from
    EpisodeFailed,      // request could not be served
    Parse,              // malformed input document
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace ctrust
