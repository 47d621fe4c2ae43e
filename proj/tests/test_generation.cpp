#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <numeric>
#include <vector>

#include "discoord/generation.hpp"
#include "testutil.hpp"

using namespace discoord;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

const ConvergenceConfig kDefault{};

}  // namespace

TEST_CASE("init_generation forms z(0) and w(0) from the scenario") {
    GenerationState s1 = init_generation(testutil::make_case(1));
    CHECK(s1.z == std::vector<double>{5, 5, 10, 28, 2, 10});
    CHECK(s1.w == std::vector<double>{5, 15, 15, 15, 20, 15});
    CHECK(s1.round == 0);

    GenerationState s2 = init_generation(testutil::make_case(2));
    CHECK(s2.z == std::vector<double>{-25, 5, 10, 10, -28, 10});
}

TEST_CASE("init_generation is zero when desire equals supply and lower is zero") {
    Scenario s(Graph(2, {{1, 2}}), {3, 4}, {3, 4}, {0, 0}, {1, 1});
    GenerationState st = init_generation(s);
    CHECK(st.z == std::vector<double>{0, 0});
}

TEST_CASE("generation_step leaves an isolated single node unchanged") {
    Scenario s(Graph(1, {}), {1}, {7}, {0}, {10});
    GenerationState st = init_generation(s);
    GenerationState next = generation_step(st, s.graph);
    CHECK(next.z == st.z);
    CHECK(next.w == st.w);
    CHECK(next.round == 1);
}

TEST_CASE("generation_step: hand-checked value on the reference graph") {
    // Node 6 only hears node 4: z_6(1) = z_6/2 + z_4/4 = 10/2 + 28/4 = 12.
    Scenario s = testutil::make_case(1);
    GenerationState st = generation_step(init_generation(s), s.graph);
    CHECK(st.z[5] == 12.0);
}

TEST_CASE("generation_step conserves both sums") {
    Scenario s = testutil::make_case(1);
    GenerationState st = init_generation(s);
    REQUIRE(sum(st.z) == 60.0);
    REQUIRE(sum(st.w) == 85.0);
    for (int t = 0; t < 1000; ++t) st = generation_step(st, s.graph);
    CHECK(sum(st.z) == Catch::Approx(60.0).epsilon(0).margin(1e-9));
    CHECK(sum(st.w) == Catch::Approx(85.0).epsilon(0).margin(1e-9));
}

TEST_CASE("run_generation reproduces the reference results") {
    SECTION("case 1: proportional split of the shortfall") {
        GenerationResult r = run_generation(testutil::make_case(1), kDefault);
        REQUIRE(r.converged);
        std::vector<double> expected{3.5294, 10.5882, 10.5882, 10.5882, 14.1176, 10.5882};
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(r.delta_e[i] == Catch::Approx(expected[i]).epsilon(0).margin(1e-3));
        }
        CHECK(r.ratio == Catch::Approx(60.0 / 85.0).epsilon(0).margin(1e-9));
    }
    SECTION("case 2: surplus network generates nothing") {
        GenerationResult r = run_generation(testutil::make_case(2), kDefault);
        REQUIRE(r.converged);
        CHECK(r.delta_e == std::vector<double>(6, 0.0));
        CHECK(r.ratio == Catch::Approx(-18.0 / 85.0).epsilon(0).margin(1e-9));
    }
    SECTION("case 3: starved network generates at the upper bounds") {
        Scenario s = testutil::make_case(3);
        GenerationResult r = run_generation(s, kDefault);
        REQUIRE(r.converged);
        CHECK(r.delta_e == s.upper);
    }
    SECTION("case 4: exact supply needs no generation") {
        GenerationResult r = run_generation(testutil::make_case(4), kDefault);
        REQUIRE(r.converged);
        CHECK(r.delta_e == std::vector<double>(6, 0.0));
    }
}

TEST_CASE("run_generation keeps every node inside its bounds") {
    for (int k = 1; k <= 4; ++k) {
        Scenario s = testutil::make_case(k);
        GenerationResult r = run_generation(s, kDefault);
        for (std::size_t i = 0; i < r.delta_e.size(); ++i) {
            CHECK(r.delta_e[i] >= s.lower[i]);
            CHECK(r.delta_e[i] <= s.upper[i]);
        }
    }
}

TEST_CASE("supply-demand balance holds in the balanced regime") {
    Scenario s = testutil::make_case(1);
    GenerationResult r = run_generation(s, kDefault);
    double achieved_total = sum(s.initial) + sum(r.delta_e);
    CHECK(achieved_total == Catch::Approx(sum(s.desired)).epsilon(0).margin(1e-6));
}

TEST_CASE("per-node ratios agree with the conserved-sum ratio at stopping") {
    for (int k = 1; k <= 4; ++k) {
        Scenario s = testutil::make_case(k);
        GenerationState st = init_generation(s);
        double target = sum(st.z) / sum(st.w);
        for (std::int64_t t = 0; t < kDefault.max_rounds; ++t) {
            GenerationState next = generation_step(st, s.graph);
            double dz = max_abs_diff(next.z, st.z);
            double dw = max_abs_diff(next.w, st.w);
            st = std::move(next);
            if (dz < kDefault.tolerance && dw < kDefault.tolerance) break;
        }
        for (std::size_t i = 0; i < st.z.size(); ++i) {
            double ratio = st.z[i] / st.w[i];
            CHECK(ratio == Catch::Approx(target).epsilon(0).margin(10 * kDefault.tolerance));
        }
    }
}

TEST_CASE("zero capacity band falls back to the lower bounds") {
    Scenario s(Graph(2, {{1, 2}}), {0, 0}, {4, 4}, {2, 2}, {2, 2});
    GenerationResult r = run_generation(s, kDefault);
    CHECK(r.converged);
    CHECK(r.rounds_used == 0);
    CHECK(r.delta_e == std::vector<double>{2, 2});
    CHECK(r.ratio == 0.0);
}

TEST_CASE("exhausting the round budget reports non-convergence with a partial result") {
    ConvergenceConfig cfg;
    cfg.max_rounds = 1;
    Scenario s = testutil::make_case(1);
    GenerationResult r = run_generation(s, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.rounds_used == 1);
    REQUIRE(r.delta_e.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(r.delta_e[i] >= s.lower[i]);
        CHECK(r.delta_e[i] <= s.upper[i]);
    }
}

TEST_CASE("run_generation is deterministic") {
    Scenario s = testutil::make_case(1);
    GenerationResult a = run_generation(s, kDefault);
    GenerationResult b = run_generation(s, kDefault);
    CHECK(a.delta_e == b.delta_e);
    CHECK(a.rounds_used == b.rounds_used);
    CHECK(a.ratio == b.ratio);
}

TEST_CASE("observers see exactly the sampled rounds") {
    ConvergenceConfig cfg;
    cfg.trace_every = 10;
    std::vector<std::int64_t> seen;
    run_generation(testutil::make_case(1), cfg,
                   [&](const GenerationState& st) { seen.push_back(st.round); });
    REQUIRE_FALSE(seen.empty());
    CHECK(seen.front() == 0);
    for (std::int64_t r : seen) CHECK(r % 10 == 0);
    for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i] - seen[i - 1] == 10);
}

TEST_CASE("config sanity checks") {
    ConvergenceConfig bad;
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(run_generation(testutil::make_case(1), bad), std::invalid_argument);
    bad = ConvergenceConfig{};
    bad.max_rounds = 0;
    CHECK_THROWS_AS(run_generation(testutil::make_case(1), bad), std::invalid_argument);
}
