#include "ctrust/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ctrust::sim {

using nlohmann::json;

bool outcome::is_episode(std::string_view o) noexcept {
    return o == kProvideSettled || o == kRecommendSettled || o == kFailed;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

std::size_t MetricsLog::episode_count() const {
    return static_cast<std::size_t>(std::count_if(
        rows_.begin(), rows_.end(), [](const MetricsRow& r) { return outcome::is_episode(r.outcome); }));
}

namespace {

void put_optional(std::ostream& out, const std::optional<double>& v) {
    if (v) out << format_number(*v);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
    fail(ErrorCode::Parse, "metrics CSV line " + std::to_string(line) + ": " + what);
}

std::optional<double> read_optional(const std::string& cell, std::size_t line, const char* column) {
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        parse_error(line, std::string("column ") + column + ": '" + cell + "' is not a number");
    }
    return v;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

} // namespace

void MetricsLog::write_csv(std::ostream& out) const {
    out << kCsvHeader << '\n';
    for (const auto& r : rows_) {
        out << r.tick << ',' << r.observer << ',' << r.subject << ',';
        put_optional(out, r.trv);
        out << ',';
        put_optional(out, r.dt);
        out << ',';
        put_optional(out, r.it);
        out << ',';
        put_optional(out, r.rt);
        out << ',' << r.selected << ',' << r.outcome << '\n';
    }
}

void MetricsLog::write_jsonl(std::ostream& out) const {
    for (const auto& r : rows_) {
        json j{{"tick", r.tick},
               {"observer", r.observer},
               {"subject", r.subject},
               {"trv", optional_json(r.trv)},
               {"dt", optional_json(r.dt)},
               {"it", optional_json(r.it)},
               {"rt", optional_json(r.rt)},
               {"selected", r.selected},
               {"outcome", r.outcome}};
        out << j.dump() << '\n';
    }
}

std::string MetricsLog::to_csv() const {
    std::ostringstream out;
    write_csv(out);
    return out.str();
}

MetricsLog MetricsLog::read_csv(std::istream& in) {
    MetricsLog log;
    std::string line;
    std::size_t number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_seen) {
            if (line != kCsvHeader) parse_error(number, "expected header '" + std::string(kCsvHeader) + "'");
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != 9) {
            parse_error(number, "expected 9 columns, found " + std::to_string(cells.size()));
        }
        MetricsRow r;
        auto [ptr, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), r.tick);
        if (cells[0].empty() || ec != std::errc{} || ptr != cells[0].data() + cells[0].size()) {
            parse_error(number, "column tick: '" + cells[0] + "' is not a tick");
        }
        r.observer = std::move(cells[1]);
        r.subject = std::move(cells[2]);
        r.trv = read_optional(cells[3], number, "trv");
        r.dt = read_optional(cells[4], number, "dt");
        r.it = read_optional(cells[5], number, "it");
        r.rt = read_optional(cells[6], number, "rt");
        r.selected = std::move(cells[7]);
        r.outcome = std::move(cells[8]);
        log.append(std::move(r));
    }
    if (!header_seen) parse_error(number + 1, "missing header");
    return log;
}

std::vector<MetricsRow> MetricsLog::trajectory(const EntityId& observer,
                                               const EntityId& subject) const {
    std::vector<MetricsRow> out;
    for (const auto& r : rows_) {
        if (r.observer == observer && r.subject == subject && r.trv) out.push_back(r);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const MetricsRow& a, const MetricsRow& b) { return a.tick < b.tick; });
    return out;
}

RunReport RunReport::from_log(const MetricsLog& log, std::string scenario, Tick ticks) {
    RunReport rep;
    rep.scenario = std::move(scenario);
    rep.ticks = ticks;
    for (const auto& r : log.rows()) {
        if (outcome::is_episode(r.outcome)) {
            ++rep.episodes;
            if (r.outcome != outcome::kFailed) ++rep.successes;
        }
        if (r.trv && !r.subject.empty()) rep.final_trv[{r.observer, r.subject}] = *r.trv;
        if (r.rt) rep.final_rt[{r.observer, r.subject}] = *r.rt;
    }
    rep.success_rate =
        rep.episodes ? static_cast<double>(rep.successes) / static_cast<double>(rep.episodes) : 0.0;
    return rep;
}

std::string RunReport::to_json() const {
    json j;
    j["scenario"] = scenario;
    j["ticks"] = ticks;
    j["episodes"] = episodes;
    j["successes"] = successes;
    j["success_rate"] = success_rate;
    j["final_trv"] = json::array();
    for (const auto& [key, v] : final_trv) {
        j["final_trv"].push_back({{"observer", key.first}, {"subject", key.second}, {"trv", v}});
    }
    j["final_rt"] = json::array();
    for (const auto& [key, v] : final_rt) {
        j["final_rt"].push_back({{"observer", key.first}, {"recommender", key.second}, {"rt", v}});
    }
    j["overrides"] = json::object();
    for (const auto& [k, v] : overrides) j["overrides"][k] = v;
    return j.dump(2) + "\n";
}

std::string RunReport::to_text() const {
    std::ostringstream out;
    out << "scenario: " << scenario << "\n"
        << "ticks: " << ticks << "\n"
        << "episodes: " << episodes << " (succeeded " << successes << ", rate "
        << format_number(success_rate) << ")\n";
    for (const auto& [k, v] : overrides) out << "override: " << k << "=" << v << "\n";
    out << "final trust (observer -> subject):\n";
    for (const auto& [key, v] : final_trv) {
        out << "  " << key.first << " -> " << key.second << ": " << format_number(v) << "\n";
    }
    if (!final_rt.empty()) {
        out << "final recommender trust (observer -> recommender):\n";
        for (const auto& [key, v] : final_rt) {
            out << "  " << key.first << " -> " << key.second << ": " << format_number(v) << "\n";
        }
    }
    return out.str();
}

} // namespace ctrust::sim
