#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "discoord/distribution.hpp"
#include "discoord/generation.hpp"
#include "discoord/oracle.hpp"
#include "testutil.hpp"

using namespace discoord;

namespace {
const ConvergenceConfig kDefault{};
}

TEST_CASE("generation_fixed_point closed form") {
    SECTION("case 1 splits proportionally with r = 60/85") {
        std::vector<double> d = generation_fixed_point(testutil::make_case(1));
        CHECK(d[0] == 5.0 * (60.0 / 85.0));
        CHECK(d[0] == Catch::Approx(3.5294).epsilon(0).margin(1e-3));
        CHECK(d[4] == 20.0 * (60.0 / 85.0));
    }
    SECTION("case 3 clamps r to 1, yielding the upper bounds") {
        Scenario s = testutil::make_case(3);
        CHECK(generation_fixed_point(s) == s.upper);
    }
    SECTION("case 2 clamps r to 0, yielding the lower bounds") {
        Scenario s = testutil::make_case(2);
        CHECK(generation_fixed_point(s) == s.lower);
    }
    SECTION("zero capacity band returns lower") {
        Scenario s(Graph(2, {{1, 2}}), {0, 0}, {9, 9}, {1.5, 2.5}, {1.5, 2.5});
        CHECK(generation_fixed_point(s) == std::vector<double>{1.5, 2.5});
    }
}

TEST_CASE("distribution_fixed_point reproduces the case-1 flows") {
    Scenario s = testutil::make_case(1);
    std::vector<double> delta = generation_fixed_point(s);
    std::vector<double> flows = distribution_fixed_point(s, delta);
    // Canonical slot (1,2) holds the energy node 1 receives from node 2.
    int k12 = s.graph.edge_index(1, 2);
    CHECK(flows[static_cast<std::size_t>(k12)] == Catch::Approx(1.6298).epsilon(0).margin(1e-3));
}

TEST_CASE("distribution_fixed_point with a uniform surplus gives zero flows") {
    Scenario s(Graph(3, {{1, 2}, {2, 3}}), {5, 5, 5}, {2, 2, 2}, {0, 0, 0}, {0, 0, 0});
    std::vector<double> flows = distribution_fixed_point(s, std::vector<double>{0, 0, 0});
    for (double f : flows) CHECK(f == 0.0);
}

TEST_CASE("the cumulative disagreement vector satisfies its defining system") {
    for (int k = 1; k <= 4; ++k) {
        Scenario s = testutil::make_case(k);
        std::vector<double> delta = generation_fixed_point(s);
        const int n = s.node_count();
        auto un = static_cast<std::size_t>(n);

        std::vector<double> g0(un);
        for (std::size_t i = 0; i < un; ++i) g0[i] = s.initial[i] + delta[i] - s.desired[i];
        double mean = std::accumulate(g0.begin(), g0.end(), 0.0) / n;

        DenseMatrix w = distribution_mixing_matrix(s.graph);
        DenseMatrix a(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                a.at(i, j) = (i == j ? 1.0 : 0.0) - w.at(i, j) + 1.0 / n;
            }
        }
        std::vector<double> rhs(un);
        for (std::size_t i = 0; i < un; ++i) rhs[i] = g0[i] - mean;
        std::vector<double> disagreement = a.solve(rhs);

        // residual of (I - W) s = g0 - mean*1
        std::vector<double> ws = w.multiply(disagreement);
        for (std::size_t i = 0; i < un; ++i) {
            double lhs = disagreement[i] - ws[i];
            CHECK(std::abs(lhs - rhs[i]) < 1e-10);
        }
    }
}

TEST_CASE("dense solve rejects singular systems") {
    DenseMatrix a(2);  // all zeros
    CHECK_THROWS_AS(a.solve(std::vector<double>{1, 1}), SingularSystemError);
}

TEST_CASE("dense solve recovers a known solution") {
    DenseMatrix a(3);
    a.at(0, 0) = 2; a.at(0, 1) = 1; a.at(0, 2) = 0;
    a.at(1, 0) = 1; a.at(1, 1) = 3; a.at(1, 2) = 1;
    a.at(2, 0) = 0; a.at(2, 1) = 1; a.at(2, 2) = 4;
    std::vector<double> x{1.0, -2.0, 0.5};
    std::vector<double> b = a.multiply(x);
    std::vector<double> got = a.solve(b);
    for (std::size_t i = 0; i < 3; ++i) CHECK(got[i] == Catch::Approx(x[i]).epsilon(0).margin(1e-12));
}

TEST_CASE("power_iteration_reference histories") {
    SECTION("round zero is the initial state") {
        Scenario s = testutil::make_case(1);
        IterationHistory h = power_iteration_reference(s, 0);
        REQUIRE(h.z.size() == 1);
        CHECK(h.z[0] == std::vector<double>{5, 5, 10, 28, 2, 10});
        CHECK(h.w[0] == std::vector<double>{5, 15, 15, 15, 20, 15});
        CHECK(h.h[0] == std::vector<double>(7, 0.0));
    }
    SECTION("one round matches the hand-checked node-6 value") {
        IterationHistory h = power_iteration_reference(testutil::make_case(1), 1);
        CHECK(h.z[1][5] == 12.0);
    }
    SECTION("case 2 surplus averages to 3 everywhere") {
        IterationHistory h = power_iteration_reference(testutil::make_case(2), 2000);
        for (double g : h.g.back()) CHECK(g == Catch::Approx(3.0).epsilon(0).margin(1e-9));
    }
}

TEST_CASE("dense histories track the sparse iteration round by round") {
    Scenario s = testutil::make_case(1);
    const int rounds = 50;
    IterationHistory dense = power_iteration_reference(s, rounds);

    GenerationState gen = init_generation(s);
    std::vector<double> delta = generation_fixed_point(s);
    DistributionState dist = init_distribution(s, delta);
    for (int t = 0; t <= rounds; ++t) {
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(std::abs(gen.z[i] - dense.z[static_cast<std::size_t>(t)][i]) <= 1e-12);
            CHECK(std::abs(gen.w[i] - dense.w[static_cast<std::size_t>(t)][i]) <= 1e-12);
            CHECK(std::abs(dist.g[i] - dense.g[static_cast<std::size_t>(t)][i]) <= 1e-12);
        }
        for (std::size_t k = 0; k < 7; ++k) {
            CHECK(std::abs(dist.h[k] - dense.h[static_cast<std::size_t>(t)][k]) <= 1e-12);
        }
        if (t < rounds) {
            gen = generation_step(gen, s.graph);
            dist = distribution_step(dist, s.graph);
        }
    }
}

TEST_CASE("oracle and iterative solvers agree on the reference cases") {
    for (int k = 1; k <= 4; ++k) {
        Scenario s = testutil::make_case(k);
        GenerationResult gen = run_generation(s, kDefault);
        std::vector<double> oracle_delta = generation_fixed_point(s);
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(std::abs(gen.delta_e[i] - oracle_delta[i]) < 1e-6);
        }
        FlowResult dist = run_distribution(s, gen.delta_e, kDefault);
        std::vector<double> oracle_flows = distribution_fixed_point(s, gen.delta_e);
        for (std::size_t e = 0; e < 7; ++e) {
            CHECK(std::abs(dist.flows[e] - oracle_flows[e]) < 1e-6);
        }
    }
}
