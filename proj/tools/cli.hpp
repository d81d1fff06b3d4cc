#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ctrust::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kRuntimeError = 2;

int cmd_validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

struct RunOptions {
    std::filesystem::path config;
    std::filesystem::path out_dir;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::optional<std::uint64_t> seed;
};

/// Writes metrics.csv, metrics.jsonl and report.json into out_dir (created
/// when missing) and prints the report.
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

/// Tick-sorted trust trajectory of `subject` as seen by `observer`, as CSV
/// with header `tick,trv,dt,it,outcome`.
int cmd_trace(const std::filesystem::path& metrics, const std::string& observer,
              const std::string& subject, std::ostream& out, std::ostream& err);

/// Splits `key=value`; nullopt when there is no '=' or the key is empty.
std::optional<std::pair<std::string, std::string>> split_assignment(const std::string& text);

} // namespace ctrust::cli
