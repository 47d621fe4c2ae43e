#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "discoord/convergence.hpp"
#include "discoord/graph.hpp"
#include "discoord/scenario.hpp"

namespace discoord {

// State of the distribution consensus. g is the per-node surplus being
// averaged; h holds one accumulator per canonical edge (a < b), where slot
// value h_ab is the net energy node a has received from node b so far.
// Storing a single slot per edge makes antisymmetry structural: the (b, a)
// reading is the negated slot.
struct DistributionState {
    std::vector<double> g;  // surplus per node
    std::vector<double> h;  // accumulated flow per canonical edge
    std::int64_t round = 0;
};

// h(0) = 0,  g_i(0) = initial_i + delta_e_i - desired_i.
inline DistributionState init_distribution(const Scenario& s, std::span<const double> delta_e) {
    auto n = static_cast<std::size_t>(s.node_count());
    if (delta_e.size() != n) throw std::invalid_argument("delta_e length mismatch");
    DistributionState st;
    st.g.resize(n);
    for (std::size_t i = 0; i < n; ++i) st.g[i] = s.initial[i] + delta_e[i] - s.desired[i];
    st.h.assign(static_cast<std::size_t>(s.graph.edge_count()), 0.0);
    return st;
}

// One synchronous round. Each edge moves a_ab * (g_b - g_a) from b to a,
// computed from round-t surpluses; the same quantity updates the edge
// accumulator and both endpoint surpluses, so Σg is conserved and
// g_i(t) = g_i(0) + Σ_j h_ij(t) holds at every round.
inline DistributionState distribution_step(const DistributionState& st, const Graph& g) {
    DistributionState next{st.g, st.h, st.round + 1};
    auto edges = g.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge& e = edges[k];
        double a = g.metropolis_weight(e.a, e.b);
        double d = a * (st.g[static_cast<std::size_t>(e.b - 1)] - st.g[static_cast<std::size_t>(e.a - 1)]);
        next.h[k] += d;
        next.g[static_cast<std::size_t>(e.a - 1)] += d;
        next.g[static_cast<std::size_t>(e.b - 1)] -= d;
    }
    return next;
}

// Net energy node `to` has received from neighbor `from` (negative when the
// energy actually went the other way).
inline double flow_into(const Graph& g, std::span<const double> h, NodeId to, NodeId from) {
    int k = g.edge_index(to, from);
    if (k < 0) throw NotAnEdgeError(to, from);
    double v = h[static_cast<std::size_t>(k)];
    return to < from ? v : -v;
}

// Final energy per node: initial + generated + everything received over the
// node's edges. Flows only move energy, so the total is Σ(initial + delta_e).
inline std::vector<double> achieved_energies(const Scenario& s, std::span<const double> delta_e,
                                             std::span<const double> flows) {
    auto n = static_cast<std::size_t>(s.node_count());
    std::vector<double> achieved(n);
    for (std::size_t i = 0; i < n; ++i) achieved[i] = s.initial[i] + delta_e[i];
    auto edges = s.graph.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        achieved[static_cast<std::size_t>(edges[k].a - 1)] += flows[k];
        achieved[static_cast<std::size_t>(edges[k].b - 1)] -= flows[k];
    }
    return achieved;
}

// e_i = desired_i - achieved_i. Uniform across nodes at convergence.
inline std::vector<double> residual_errors(const Scenario& s, std::span<const double> achieved) {
    auto n = static_cast<std::size_t>(s.node_count());
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = s.desired[i] - achieved[i];
    return e;
}

struct FlowResult {
    std::vector<double> flows;      // per canonical edge, receiver-positive for the lower id
    std::vector<double> achieved;   // final energy per node
    std::vector<double> residuals;  // desired - achieved
    double total_flow = 0.0;        // Σ |flow| over edges
    std::int64_t rounds_used = 0;
    bool converged = false;
};

using DistributionObserver = std::function<void(const DistributionState&)>;

// Runs the averaging iteration until the per-round change of g falls below
// tolerance (h changes are proportional to g disagreements, so g convergence
// implies h convergence), then reads off flows, achieved energies and
// residuals. On a single-node network this degenerates to empty flows and
// residual = desired - initial - delta_e.
inline FlowResult run_distribution(const Scenario& s, std::span<const double> delta_e,
                                   const ConvergenceConfig& cfg,
                                   const DistributionObserver& observe = {}) {
    cfg.check();
    const Graph& g = s.graph;

    DistributionState st = init_distribution(s, delta_e);
    if (observe && cfg.sample_at(0)) observe(st);

    FlowResult res;
    for (std::int64_t t = 0; t < cfg.max_rounds; ++t) {
        DistributionState next = distribution_step(st, g);
        double dg = max_abs_diff(next.g, st.g);
        st = std::move(next);
        if (observe && cfg.sample_at(st.round)) observe(st);
        if (dg < cfg.tolerance) {
            res.converged = true;
            break;
        }
    }
    res.rounds_used = st.round;
    res.flows = std::move(st.h);
    res.achieved = achieved_energies(s, delta_e, res.flows);
    res.residuals = residual_errors(s, res.achieved);
    res.total_flow = 0.0;
    for (double f : res.flows) res.total_flow += std::abs(f);
    return res;
}

}  // namespace discoord
