#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "discoord/convergence.hpp"
#include "discoord/graph.hpp"
#include "discoord/scenario.hpp"

namespace discoord {

// Interim vectors of the generation ratio consensus. Both per-node sums are
// conserved by every step (the mixing iteration is column-stochastic), so the
// per-node ratio z_i/w_i converges to Σz(0)/Σw(0) on connected graphs.
struct GenerationState {
    std::vector<double> z;  // demand excess being averaged
    std::vector<double> w;  // generation capacity being averaged
    std::int64_t round = 0;
};

// z_i(0) = desired_i - initial_i - lower_i,  w_i(0) = upper_i - lower_i.
inline GenerationState init_generation(const Scenario& s) {
    auto n = static_cast<std::size_t>(s.node_count());
    GenerationState st;
    st.z.resize(n);
    st.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        st.z[i] = s.desired[i] - s.initial[i] - s.lower[i];
        st.w[i] = s.upper[i] - s.lower[i];
    }
    return st;
}

// One synchronous round: every node mixes its own value and its neighbors'
// values, each weighted by the sender's 1/(1+degree). Reads only round-t
// values; conserves Σz and Σw.
inline GenerationState generation_step(const GenerationState& st, const Graph& g) {
    const int n = g.node_count();
    GenerationState next;
    next.z.resize(static_cast<std::size_t>(n));
    next.w.resize(static_cast<std::size_t>(n));
    next.round = st.round + 1;
    for (NodeId i = 1; i <= n; ++i) {
        double self = g.generation_weight(i);
        auto k = static_cast<std::size_t>(i - 1);
        double z = self * st.z[k];
        double w = self * st.w[k];
        for (NodeId j : g.neighbors(i)) {
            double wj = g.generation_weight(j);
            auto kj = static_cast<std::size_t>(j - 1);
            z += wj * st.z[kj];
            w += wj * st.w[kj];
        }
        next.z[k] = z;
        next.w[k] = w;
    }
    return next;
}

struct GenerationResult {
    std::vector<double> delta_e;  // energy each node generates, in [lower, upper]
    std::int64_t rounds_used = 0;
    bool converged = false;
    double ratio = 0.0;  // common limit of z_i/w_i; 0 when nothing can generate
};

using GenerationObserver = std::function<void(const GenerationState&)>;

// Runs the ratio consensus to the stopping rule, then extracts
//   delta_e_i = lower_i + (upper_i - lower_i) * r_i
// where r_i is the node's measured ratio z_i(T)/w_i(T) clamped to [0, 1].
// Ratios within 10*tolerance of a boundary are snapped onto it, so scenarios
// whose exact ratio saturates (all-lower / all-upper) come out exact instead
// of carrying stopping-rule noise into the generated energies.
//
// Degenerate case: when Σw(0) = 0 no node can generate anything beyond its
// lower bound; delta_e = lower, ratio reported as 0, converged immediately.
inline GenerationResult run_generation(const Scenario& s, const ConvergenceConfig& cfg,
                                       const GenerationObserver& observe = {}) {
    cfg.check();
    const Graph& g = s.graph;
    auto n = static_cast<std::size_t>(s.node_count());

    GenerationState st = init_generation(s);
    const double sum_z0 = std::accumulate(st.z.begin(), st.z.end(), 0.0);
    const double sum_w0 = std::accumulate(st.w.begin(), st.w.end(), 0.0);

    if (observe && cfg.sample_at(0)) observe(st);

    GenerationResult res;
    if (sum_w0 == 0.0) {  // w(0) is componentwise >= 0, so the whole vector is zero
        res.delta_e = s.lower;
        res.rounds_used = 0;
        res.converged = true;
        res.ratio = 0.0;
        return res;
    }

    for (std::int64_t t = 0; t < cfg.max_rounds; ++t) {
        GenerationState next = generation_step(st, g);
        double dz = max_abs_diff(next.z, st.z);
        double dw = max_abs_diff(next.w, st.w);
        st = std::move(next);
        if (observe && cfg.sample_at(st.round)) observe(st);
        if (dz < cfg.tolerance && dw < cfg.tolerance) {
            res.converged = true;
            break;
        }
    }
    res.rounds_used = st.round;

    const double network_ratio = sum_z0 / sum_w0;
    const double snap = 10.0 * cfg.tolerance;
    res.delta_e.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // w_i(T) > 0 holds on connected graphs whenever Σw(0) > 0; the guard
        // covers numerically degenerate states without changing semantics.
        double r = st.w[i] <= 1e-12 ? network_ratio : st.z[i] / st.w[i];
        r = std::clamp(r, 0.0, 1.0);
        if (r <= snap) r = 0.0;
        if (1.0 - r <= snap) r = 1.0;
        res.delta_e[i] = std::clamp(s.lower[i] + (s.upper[i] - s.lower[i]) * r, s.lower[i], s.upper[i]);
    }
    double sum_wT = std::accumulate(st.w.begin(), st.w.end(), 0.0);
    res.ratio = std::accumulate(st.z.begin(), st.z.end(), 0.0) / sum_wT;
    return res;
}

}  // namespace discoord
