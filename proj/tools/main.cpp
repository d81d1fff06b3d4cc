#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"ctrust: context-based trust management simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir = "out";
    std::vector<std::string> sets;
    std::uint64_t seed = 0;

    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("--config", config, "Scenario JSON")->required();

    auto* run = app.add_subcommand("run", "Run a scenario and write metrics");
    run->add_option("--config", config, "Scenario JSON")->required();
    run->add_option("--out", out_dir, "Output directory (created when missing)");
    run->add_option("--set", sets, "Parameter override key=value (repeatable)");
    auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");

    std::string metrics, observer, subject, trace_out;
    auto* trace = app.add_subcommand("trace", "Print a trust trajectory from metrics.csv");
    trace->add_option("--metrics", metrics, "metrics.csv written by run")->required();
    trace->add_option("--observer", observer, "Observing entity")->required();
    trace->add_option("--subject", subject, "Observed entity")->required();
    trace->add_option("--out", trace_out, "Write the table here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ctrust::cli::kValidationError;
    }

    if (*validate) return ctrust::cli::cmd_validate(config, std::cout, std::cerr);

    if (*run) {
        ctrust::cli::RunOptions options;
        options.config = config;
        options.out_dir = out_dir;
        for (const auto& s : sets) {
            auto kv = ctrust::cli::split_assignment(s);
            if (!kv) {
                std::cerr << "error: --set expects key=value, got '" << s << "'\n";
                return ctrust::cli::kValidationError;
            }
            options.overrides.push_back(*kv);
        }
        if (*seed_opt) options.seed = seed;
        return ctrust::cli::cmd_run(options, std::cout, std::cerr);
    }

    if (*trace) {
        if (trace_out.empty()) {
            return ctrust::cli::cmd_trace(metrics, observer, subject, std::cout, std::cerr);
        }
        std::ofstream out(trace_out, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot write '" << trace_out << "'\n";
            return ctrust::cli::kRuntimeError;
        }
        return ctrust::cli::cmd_trace(metrics, observer, subject, out, std::cerr);
    }
    return ctrust::cli::kValidationError;
}
