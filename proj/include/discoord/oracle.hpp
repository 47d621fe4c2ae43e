#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "discoord/errors.hpp"
#include "discoord/generation.hpp"
#include "discoord/graph.hpp"
#include "discoord/scenario.hpp"

// Dense closed-form / brute-force references for cross-checking the iterative
// solvers on small instances. Everything here is O(n^2)-O(n^3) and exists for
// testing only; it is deliberately independent of the sparse iteration path.

namespace discoord {

class DenseMatrix {
public:
    explicit DenseMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

    int size() const { return n_; }
    double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)]; }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)]; }

    std::vector<double> multiply(std::span<const double> x) const {
        std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
        for (int i = 0; i < n_; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n_; ++j) acc += at(i, j) * x[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = acc;
        }
        return y;
    }

    // Gaussian elimination with partial pivoting; throws SingularSystemError
    // when a pivot collapses (cannot happen for the rank-corrected consensus
    // system on a connected graph; it would signal a bug).
    std::vector<double> solve(std::vector<double> b) const {
        DenseMatrix a = *this;
        const int n = n_;
        for (int col = 0; col < n; ++col) {
            int pivot = col;
            for (int r = col + 1; r < n; ++r) {
                if (std::abs(a.at(r, col)) > std::abs(a.at(pivot, col))) pivot = r;
            }
            if (std::abs(a.at(pivot, col)) < 1e-12) throw SingularSystemError();
            if (pivot != col) {
                for (int c = 0; c < n; ++c) std::swap(a.at(pivot, c), a.at(col, c));
                std::swap(b[static_cast<std::size_t>(pivot)], b[static_cast<std::size_t>(col)]);
            }
            for (int r = col + 1; r < n; ++r) {
                double f = a.at(r, col) / a.at(col, col);
                if (f == 0.0) continue;
                for (int c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
                b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
            }
        }
        std::vector<double> x(static_cast<std::size_t>(n), 0.0);
        for (int r = n - 1; r >= 0; --r) {
            double acc = b[static_cast<std::size_t>(r)];
            for (int c = r + 1; c < n; ++c) acc -= a.at(r, c) * x[static_cast<std::size_t>(c)];
            x[static_cast<std::size_t>(r)] = acc / a.at(r, r);
        }
        return x;
    }

private:
    int n_;
    std::vector<double> data_;
};

// Column-stochastic generation mixing matrix: entry (i, j) = 1/(1+|N_j|) when
// j is i or a neighbor of i, else 0.
inline DenseMatrix generation_mixing_matrix(const Graph& g) {
    const int n = g.node_count();
    DenseMatrix m(n);
    for (NodeId i = 1; i <= n; ++i) {
        m.at(i - 1, i - 1) = g.generation_weight(i);
        for (NodeId j : g.neighbors(i)) m.at(i - 1, j - 1) = g.generation_weight(j);
    }
    return m;
}

// Symmetric doubly-stochastic distribution mixing matrix: off-diagonal a_ij
// for edges, diagonal 1 - Σ_j a_ij.
inline DenseMatrix distribution_mixing_matrix(const Graph& g) {
    const int n = g.node_count();
    DenseMatrix m(n);
    for (NodeId i = 1; i <= n; ++i) {
        double self = 1.0;
        for (NodeId j : g.neighbors(i)) {
            double a = g.metropolis_weight(i, j);
            m.at(i - 1, j - 1) = a;
            self -= a;
        }
        m.at(i - 1, i - 1) = self;
    }
    return m;
}

// Closed form of the generation result via conserved sums: both z and w keep
// their totals every round, and on a connected graph the per-node ratio tends
// to r = Σz(0)/Σw(0). With r clamped to [0,1]:
//   delta_e_i = lower_i + (upper_i - lower_i) * r
// When Σw(0) = 0 nothing can generate and delta_e = lower.
inline std::vector<double> generation_fixed_point(const Scenario& s) {
    GenerationState st = init_generation(s);
    double sum_z0 = std::accumulate(st.z.begin(), st.z.end(), 0.0);
    double sum_w0 = std::accumulate(st.w.begin(), st.w.end(), 0.0);
    if (sum_w0 == 0.0) return s.lower;
    double r = std::clamp(sum_z0 / sum_w0, 0.0, 1.0);
    auto n = static_cast<std::size_t>(s.node_count());
    std::vector<double> delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = s.lower[i] + (s.upper[i] - s.lower[i]) * r;
    return delta;
}

// Closed form of the limiting flows. Summing the h recurrence over all rounds
// gives h_ab(inf) = a_ab * (S_b - S_a) with S the cumulative disagreement
// vector S = Σ_t (g(t) - mean 1). S solves (I - W) S = g(0) - mean 1 on the
// subspace orthogonal to 1; the rank correction (1/n) J removes the consensus
// nullspace so a plain dense solve applies.
inline std::vector<double> distribution_fixed_point(const Scenario& s, std::span<const double> delta_e) {
    const Graph& g = s.graph;
    const int n = g.node_count();
    auto un = static_cast<std::size_t>(n);

    std::vector<double> g0(un);
    for (std::size_t i = 0; i < un; ++i) g0[i] = s.initial[i] + delta_e[i] - s.desired[i];
    double mean = std::accumulate(g0.begin(), g0.end(), 0.0) / static_cast<double>(n);

    DenseMatrix w = distribution_mixing_matrix(g);
    DenseMatrix a(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a.at(i, j) = (i == j ? 1.0 : 0.0) - w.at(i, j) + 1.0 / static_cast<double>(n);
        }
    }
    std::vector<double> rhs(un);
    for (std::size_t i = 0; i < un; ++i) rhs[i] = g0[i] - mean;
    std::vector<double> disagreement = a.solve(std::move(rhs));

    auto edges = g.edges();
    std::vector<double> flows(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge& e = edges[k];
        flows[k] = g.metropolis_weight(e.a, e.b) *
                   (disagreement[static_cast<std::size_t>(e.b - 1)] - disagreement[static_cast<std::size_t>(e.a - 1)]);
    }
    return flows;
}

// Round-by-round dense matrix-vector histories of both iterations, index 0
// holding the initial vectors. The distribution part is seeded with the
// closed-form generation result. For comparing the sparse implementation
// round by round.
struct IterationHistory {
    std::vector<std::vector<double>> z;
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> g;
    std::vector<std::vector<double>> h;  // per canonical edge
};

inline IterationHistory power_iteration_reference(const Scenario& s, int rounds) {
    const Graph& graph = s.graph;
    DenseMatrix m = generation_mixing_matrix(graph);
    DenseMatrix w = distribution_mixing_matrix(graph);

    IterationHistory hist;
    GenerationState gen = init_generation(s);
    hist.z.push_back(gen.z);
    hist.w.push_back(gen.w);

    std::vector<double> delta = generation_fixed_point(s);
    std::vector<double> g0(static_cast<std::size_t>(s.node_count()));
    for (std::size_t i = 0; i < g0.size(); ++i) g0[i] = s.initial[i] + delta[i] - s.desired[i];
    hist.g.push_back(g0);
    hist.h.emplace_back(static_cast<std::size_t>(graph.edge_count()), 0.0);

    auto edges = graph.edges();
    for (int t = 0; t < rounds; ++t) {
        hist.z.push_back(m.multiply(hist.z.back()));
        hist.w.push_back(m.multiply(hist.w.back()));

        const std::vector<double>& gt = hist.g.back();
        std::vector<double> ht = hist.h.back();
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const Edge& e = edges[k];
            ht[k] += graph.metropolis_weight(e.a, e.b) *
                     (gt[static_cast<std::size_t>(e.b - 1)] - gt[static_cast<std::size_t>(e.a - 1)]);
        }
        hist.g.push_back(w.multiply(gt));
        hist.h.push_back(std::move(ht));
    }
    return hist;
}

}  // namespace discoord
