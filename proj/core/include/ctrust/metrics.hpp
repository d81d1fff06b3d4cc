#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctrust/types.hpp"

namespace ctrust::sim {

// Row outcomes. Every scheduled episode produces exactly one row with one of
// the three episode outcomes.
namespace outcome {
inline constexpr const char* kEvaluated = "evaluated"; // candidate scored
inline constexpr const char* kRtUpdate = "rt-update";  // recommender trust changed
inline constexpr const char* kProvideSettled = "provide-settled";
inline constexpr const char* kRecommendSettled = "recommend-settled";
inline constexpr const char* kFailed = "failed";

bool is_episode(std::string_view outcome) noexcept;
} // namespace outcome

struct MetricsRow {
    Tick tick = 0;
    EntityId observer;
    EntityId subject;
    std::optional<double> trv;
    std::optional<double> dt;
    std::optional<double> it;
    std::optional<double> rt;
    EntityId selected;
    std::string outcome;

    bool operator==(const MetricsRow&) const = default;
};

inline constexpr const char* kCsvHeader = "tick,observer,subject,trv,dt,it,rt,selected,outcome";

/// Shortest decimal text that reads back to exactly `v`.
std::string format_number(double v);

class MetricsLog {
public:
    void append(MetricsRow row) { rows_.push_back(std::move(row)); }

    const std::vector<MetricsRow>& rows() const noexcept { return rows_; }
    std::size_t size() const noexcept { return rows_.size(); }

    std::size_t episode_count() const;

    void write_csv(std::ostream& out) const;
    void write_jsonl(std::ostream& out) const;
    std::string to_csv() const;

    /// Reads a CSV written by write_csv. Throws Error(Parse) naming the line.
    static MetricsLog read_csv(std::istream& in);

    /// Rows about (observer, subject) carrying a trust value, ordered by tick.
    std::vector<MetricsRow> trajectory(const EntityId& observer, const EntityId& subject) const;

private:
    std::vector<MetricsRow> rows_;
};

struct RunReport {
    std::string scenario;
    Tick ticks = 0;
    std::size_t episodes = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    // (observer, subject) -> last logged trust value
    std::map<std::pair<EntityId, EntityId>, double> final_trv;
    // (observer, recommender) -> last logged recommender trust
    std::map<std::pair<EntityId, EntityId>, double> final_rt;
    std::vector<std::pair<std::string, std::string>> overrides;

    static RunReport from_log(const MetricsLog& log, std::string scenario, Tick ticks);

    std::string to_json() const;
    std::string to_text() const;
};

} // namespace ctrust::sim
