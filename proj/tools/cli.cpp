#include "cli.hpp"

#include <fstream>
#include <ostream>
#include <set>

#include "ctrust/engine.hpp"
#include "ctrust/metrics.hpp"
#include "ctrust/scenario.hpp"

namespace ctrust::cli {

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
    case ErrorCode::Io: return kRuntimeError;
    case ErrorCode::Parse:
    case ErrorCode::InvalidConfig:
    case ErrorCode::InvalidInput: return kValidationError;
    default: return kRuntimeError;
    }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot write '" + path.string() + "'");
    out << text;
    if (!out) fail(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

} // namespace

std::optional<std::pair<std::string, std::string>> split_assignment(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) return std::nullopt;
    return std::make_pair(text.substr(0, eq), text.substr(eq + 1));
}

int cmd_validate(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
    try {
        const auto scenario = sim::load_scenario(config);
        const auto problems = scenario.violations();
        if (!problems.empty()) {
            err << config.string() << ": " << problems.size() << " violation(s)\n";
            for (const auto& p : problems) err << "  " << p << "\n";
            return kValidationError;
        }
        out << config.string() << ": ok (" << scenario.entities.size() << " entities, "
            << scenario.episodes.size() << " episodes, " << scenario.ticks << " ticks)\n";
        return kOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
    try {
        auto scenario = sim::load_scenario(options.config);
        for (const auto& [k, v] : options.overrides) sim::apply_override(scenario, k, v);
        if (options.seed) scenario.seed = *options.seed;

        const auto problems = scenario.violations();
        if (!problems.empty()) {
            err << options.config.string() << ": " << problems.size() << " violation(s)\n";
            for (const auto& p : problems) err << "  " << p << "\n";
            return kValidationError;
        }

        const auto log = sim::run(scenario);

        std::error_code ec;
        std::filesystem::create_directories(options.out_dir, ec);
        if (ec) fail(ErrorCode::Io, "cannot create '" + options.out_dir.string() + "': " + ec.message());

        write_file(options.out_dir / "metrics.csv", log.to_csv());
        {
            std::ofstream jsonl(options.out_dir / "metrics.jsonl", std::ios::binary | std::ios::trunc);
            if (!jsonl) fail(ErrorCode::Io, "cannot write metrics.jsonl");
            log.write_jsonl(jsonl);
        }

        auto report = sim::RunReport::from_log(log, scenario.name, scenario.ticks);
        report.overrides = options.overrides;
        if (options.seed) report.overrides.emplace_back("seed", std::to_string(*options.seed));
        write_file(options.out_dir / "report.json", report.to_json());
        out << report.to_text();
        return kOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_trace(const std::filesystem::path& metrics, const std::string& observer,
              const std::string& subject, std::ostream& out, std::ostream& err) {
    try {
        std::ifstream in(metrics, std::ios::binary);
        if (!in) fail(ErrorCode::Io, "cannot read metrics file '" + metrics.string() + "'");
        const auto log = sim::MetricsLog::read_csv(in);

        std::set<std::string> ids;
        for (const auto& r : log.rows()) {
            ids.insert(r.observer);
            ids.insert(r.subject);
        }
        for (const auto* id : {&observer, &subject}) {
            if (!ids.count(*id)) {
                err << "error: unknown id '" << *id << "' in " << metrics.string() << "\n";
                return kValidationError;
            }
        }

        out << "tick,trv,dt,it,outcome\n";
        for (const auto& r : log.trajectory(observer, subject)) {
            out << r.tick << ',' << sim::format_number(*r.trv) << ',';
            if (r.dt) out << sim::format_number(*r.dt);
            out << ',';
            if (r.it) out << sim::format_number(*r.it);
            out << ',' << r.outcome << '\n';
        }
        return kOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

} // namespace ctrust::cli
