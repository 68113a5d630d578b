#include "nmregress/witness.hpp"

#include "nmregress/config.hpp"
#include "nmregress/operators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nmregress;

namespace {

struct Setup {
    SystemModel model;
    CorrelationTables tables;
    SimConfig sim;
};

Setup paper_setup() {
    RunConfig run = preset("paper-fig1");
    SystemModel model = run.build_model();
    CorrelationTables tables = run.build_tables(model);
    return {std::move(model), std::move(tables), run.sim};
}

} // namespace

TEST_CASE("witness: orthogonal initial pair, bounded distance") {
    const Setup s = paper_setup();
    const WitnessTrace trace =
        witness_trace(s.model, s.tables, SolverMode::Full, 20.0, s.sim);
    CHECK(std::abs(trace.distance.front() - 1.0) < 1e-12);
    for (double d : trace.distance) {
        CHECK(d >= -1e-9);
        CHECK(d <= 1.0 + 1e-9);
    }
}

TEST_CASE("witness: Markovian evolution is contractive, the time-local theory shows backflow") {
    const Setup s = paper_setup();

    const WitnessTrace markov =
        witness_trace(s.model, s.tables, SolverMode::Markovian, 20.0, s.sim);
    CHECK(markov.positive_intervals.empty());
    for (double d : markov.derivative) CHECK(d <= 1e-6);

    const WitnessTrace full = witness_trace(s.model, s.tables, SolverMode::Full, 20.0, s.sim);
    bool intersects = false;
    for (const auto& [start, end] : full.positive_intervals) {
        intersects = intersects || (start <= 3.0 && end >= 0.2);
    }
    CHECK(intersects);
}

TEST_CASE("witness distance is invariant under a global unitary frame change") {
    const Setup s = paper_setup();
    const auto grid = two_segment_grid(5.0, 0.01, 0.05, 8.0);
    const Matrix rho_plus = 0.5 * (identity_op(2) + sigma_y());
    const Matrix rho_minus = 0.5 * (identity_op(2) - sigma_y());
    const Trajectory plus =
        integrate_physical(rho_plus, grid, s.model, s.tables, SolverMode::Full, s.sim);
    const Trajectory minus =
        integrate_physical(rho_minus, grid, s.model, s.tables, SolverMode::Full, s.sim);

    std::mt19937_64 rng(47);
    const Complex i_unit(0.0, 1.0);
    const Matrix u = test::expm(i_unit * test::random_hermitian(rng, 2));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double direct = trace_distance(plus.states[i], minus.states[i]);
        const double rotated = trace_distance(u * plus.states[i] * u.adjoint(),
                                              u * minus.states[i] * u.adjoint());
        CHECK(std::abs(direct - rotated) < 1e-10);
    }
}

TEST_CASE("witness interval endpoints are stable under step halving") {
    const Setup s = paper_setup();
    const WitnessTrace coarse = witness_trace(s.model, s.tables, SolverMode::Full, 20.0, s.sim);
    SimConfig halved = s.sim;
    halved.wit_dense_step = 0.0025;
    halved.wit_sparse_step = 0.01;
    const WitnessTrace fine = witness_trace(s.model, s.tables, SolverMode::Full, 20.0, halved);

    REQUIRE(!coarse.positive_intervals.empty());
    REQUIRE(!fine.positive_intervals.empty());
    // compare the first interval overlapping the backflow window
    auto pick = [](const WitnessTrace& w) {
        for (const auto& iv : w.positive_intervals) {
            if (iv.second >= 0.2 && iv.first <= 3.0) return iv;
        }
        return w.positive_intervals.front();
    };
    const auto [c_start, c_end] = pick(coarse);
    const auto [f_start, f_end] = pick(fine);
    const double scale = std::max(c_end - c_start, 0.1);
    CHECK(std::abs(c_start - f_start) < 0.05 * std::max(c_start, scale));
    CHECK(std::abs(c_end - f_end) < 0.05 * std::max(c_end, scale));
}

TEST_CASE("witness rejects a window too short to see the backflow feature") {
    const Setup s = paper_setup();
    CHECK_THROWS_AS(witness_trace(s.model, s.tables, SolverMode::Full, 2.0, s.sim),
                    std::invalid_argument);
}
