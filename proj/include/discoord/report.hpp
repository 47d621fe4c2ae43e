#pragma once

#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "discoord/distribution.hpp"
#include "discoord/format.hpp"
#include "discoord/generation.hpp"
#include "discoord/scenario.hpp"

namespace discoord {

// One positive directed transfer: `magnitude` units moved from -> to.
struct DirectedFlow {
    NodeId from;
    NodeId to;
    double magnitude;
};

// Everything a run prints: the scenario classification, both solver outputs,
// and the flow rendering. Each canonical edge appears at most once among the
// directed flows and all magnitudes are > 0.
struct RunReport {
    DemandRegime regime;
    std::vector<double> delta_e;
    std::vector<DirectedFlow> flows;
    std::vector<double> achieved;
    std::vector<double> residuals;
    double total_flow = 0.0;
    std::int64_t generation_rounds = 0;
    std::int64_t distribution_rounds = 0;
    bool generation_converged = false;
    bool distribution_converged = false;
};

// Renders the edge-slot flows as directed transfers. Slot value f for edge
// (a, b) is the net energy a received from b: positive means b -> a, negative
// a -> b, zero edges are dropped. Ordered by canonical edge.
inline std::vector<DirectedFlow> directed_flows(const Graph& g, std::span<const double> flows) {
    std::vector<DirectedFlow> out;
    auto edges = g.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        double f = flows[k];
        if (f > 0.0) {
            out.push_back({edges[k].b, edges[k].a, f});
        } else if (f < 0.0) {
            out.push_back({edges[k].a, edges[k].b, -f});
        }
    }
    return out;
}

// Full pipeline: classify, compute generation, feed the generated energies to
// the distribution solver. Observers receive sampled per-round state.
inline RunReport run_pipeline(const Scenario& s, const ConvergenceConfig& cfg,
                              const GenerationObserver& gen_observe = {},
                              const DistributionObserver& dist_observe = {}) {
    RunReport report;
    report.regime = validate(s);

    GenerationResult gen = run_generation(s, cfg, gen_observe);
    report.delta_e = gen.delta_e;
    report.generation_rounds = gen.rounds_used;
    report.generation_converged = gen.converged;

    FlowResult dist = run_distribution(s, gen.delta_e, cfg, dist_observe);
    report.flows = directed_flows(s.graph, dist.flows);
    report.achieved = std::move(dist.achieved);
    report.residuals = std::move(dist.residuals);
    report.total_flow = dist.total_flow;
    report.distribution_rounds = dist.rounds_used;
    report.distribution_converged = dist.converged;
    return report;
}

inline std::string describe_regime(const DemandRegime& regime) {
    std::string s = to_string(regime.tag);
    if (regime.no_generation_needed) s += " (no generation needed)";
    return s;
}

// Line-oriented plain-text report, 4 decimal places, one section per result
// kind. Layout is stable so golden tests can diff it byte for byte.
inline std::string format_report(const RunReport& r) {
    std::ostringstream out;
    out << "regime: " << describe_regime(r.regime) << '\n';
    out << "generated energies:\n";
    for (std::size_t i = 0; i < r.delta_e.size(); ++i) {
        out << "  node " << (i + 1) << ": " << format_fixed4(r.delta_e[i]) << '\n';
    }
    out << "energy flows:\n";
    if (r.flows.empty()) {
        out << "  none\n";
    } else {
        for (const DirectedFlow& f : r.flows) {
            out << "  " << f.from << " -> " << f.to << ": " << format_fixed4(f.magnitude) << '\n';
        }
    }
    out << "achieved energies:\n";
    for (std::size_t i = 0; i < r.achieved.size(); ++i) {
        out << "  node " << (i + 1) << ": " << format_fixed4(r.achieved[i]) << '\n';
    }
    out << "residual errors:\n";
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
        out << "  node " << (i + 1) << ": " << format_fixed4(r.residuals[i]) << '\n';
    }
    out << "total flow: " << format_fixed4(r.total_flow) << '\n';
    out << "rounds: generation " << r.generation_rounds << ", distribution " << r.distribution_rounds
        << '\n';
    out << "converged: generation " << (r.generation_converged ? "yes" : "no") << ", distribution "
        << (r.distribution_converged ? "yes" : "no") << '\n';
    return out.str();
}

// DOT digraph of the positive flows, one arrow per transferring edge, labels
// at 4 decimals. Node and edge ordering ascending, so output is byte-stable.
inline std::string emit_flow_dot(const RunReport& r) {
    std::ostringstream out;
    out << "digraph energy_flows {\n";
    for (std::size_t i = 0; i < r.delta_e.size(); ++i) out << "  " << (i + 1) << ";\n";
    for (const DirectedFlow& f : r.flows) {
        out << "  " << f.from << " -> " << f.to << " [label=\"" << format_fixed4(f.magnitude)
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace discoord
