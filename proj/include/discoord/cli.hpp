#pragma once

#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "discoord/report.hpp"
#include "discoord/scenario.hpp"
#include "discoord/trace.hpp"

namespace discoord {

// Exit codes: 0 success, 2 invalid input, 3 non-convergence. Nothing else.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNotConverged = 3;

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        Scenario scenario = parse_scenario(read_file(path));
        out << describe_regime(validate(scenario)) << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
}

inline int cmd_run(const std::string& path, const ConvergenceConfig& base_cfg,
                   const std::string& trace_path, const std::string& dot_path, std::ostream& out,
                   std::ostream& err) {
    try {
        Scenario scenario = parse_scenario(read_file(path));

        ConvergenceConfig cfg = base_cfg;
        std::ofstream trace_file;
        std::unique_ptr<GenerationTrace> gen_trace;
        std::unique_ptr<DistributionTrace> dist_trace;
        if (!trace_path.empty()) {
            trace_file.open(trace_path, std::ios::binary | std::ios::trunc);
            if (!trace_file) throw Error("cannot open file: " + trace_path);
            cfg.trace_every = 1;
            gen_trace = std::make_unique<GenerationTrace>(trace_file);
            dist_trace = std::make_unique<DistributionTrace>(trace_file, scenario.graph);
        }

        RunReport report = run_pipeline(
            scenario, cfg,
            gen_trace ? GenerationObserver([&](const GenerationState& st) { (*gen_trace)(st); })
                      : GenerationObserver{},
            dist_trace ? DistributionObserver([&](const DistributionState& st) { (*dist_trace)(st); })
                       : DistributionObserver{});
        if (dist_trace) dist_trace->finish();

        out << format_report(report);

        if (!dot_path.empty()) {
            std::ofstream dot_file(dot_path, std::ios::binary | std::ios::trunc);
            if (!dot_file) throw Error("cannot open file: " + dot_path);
            dot_file << emit_flow_dot(report);
        }
        return report.generation_converged && report.distribution_converged ? kExitOk
                                                                            : kExitNotConverged;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
}

}  // namespace detail

// In-process entry point; `args` excludes the program name. The CLI binary is
// a thin wrapper, so tests drive the exact same code path.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"distributed energy generation and distribution solver"};
    app.name("discoord");
    app.require_subcommand(1);

    std::string validate_path;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a scenario file and print its demand regime");
    validate_cmd->add_option("file", validate_path, "scenario file (JSON)")->required();

    std::string run_path;
    std::string trace_path;
    std::string dot_path;
    ConvergenceConfig cfg;
    CLI::App* run_cmd = app.add_subcommand("run", "solve a scenario: generation, then distribution");
    run_cmd->add_option("file", run_path, "scenario file (JSON)")->required();
    run_cmd->add_option("--tol", cfg.tolerance, "per-round max-norm stopping tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run_cmd->add_option("--max-rounds", cfg.max_rounds, "round budget per phase")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run_cmd->add_option("--trace", trace_path, "write sampled per-round state as CSV");
    run_cmd->add_option("--dot", dot_path, "write the flow diagram as a DOT digraph");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    if (validate_cmd->parsed()) return detail::cmd_validate(validate_path, out, err);
    return detail::cmd_run(run_path, cfg, trace_path, dot_path, out, err);
}

}  // namespace discoord
