#include "nmregress/generators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nmregress;

namespace {

struct Setup {
    SystemModel model;
    BathSpec bath;
    CorrelationTables tables;
};

Setup paper_setup(double rabi = 0.12, double gamma = 0.01) {
    BathSpec bath;
    bath.eta = 0.03;
    bath.omega_c = 2.2;
    bath.temperature = 4.0;
    const double detuning = polaron_shift(bath);
    SystemModel model = qd_model(rabi, detuning, gamma);
    CorrelationTables tables = CorrelationTables::build(bath, model.bohr_frequencies());
    return {std::move(model), bath, std::move(tables)};
}

} // namespace

TEST_CASE("lindblad term: dark state, decay algebra, trace identity") {
    const SystemModel model = qd_model(0.12, 0.0, 0.25);
    CHECK(max_abs(lindblad_term(ground_projector(), model)) == 0.0);

    const Matrix expected = 0.25 * (ground_projector() - excited_projector());
    CHECK(max_abs(lindblad_term(excited_projector(), model) - expected) < 1e-14);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix x = test::random_matrix(rng, 2);
        CHECK(std::abs(lindblad_term(x, model).trace()) < 1e-12);
    }
}

TEST_CASE("dissipator: empty integral, decoupled bath, Markovian saturation") {
    const Setup s = paper_setup();
    std::mt19937_64 rng(7);
    const Matrix x = test::random_matrix(rng, 2);

    CHECK(max_abs(dissipator(x, 0.0, s.model, s.tables, SolverMode::Full)) < 1e-15);
    CHECK(max_abs(dissipator(x, 0.0, s.model, s.tables, SolverMode::Naive)) < 1e-15);

    BathSpec free_bath = s.bath;
    free_bath.eta = 0.0;
    const CorrelationTables empty = CorrelationTables::build(free_bath, s.model.bohr_frequencies());
    CHECK(max_abs(dissipator(x, 5.0, s.model, empty, SolverMode::Full)) == 0.0);

    const Matrix m1 = dissipator(x, 1.0, s.model, s.tables, SolverMode::Markovian);
    const Matrix m10 = dissipator(x, 10.0, s.model, s.tables, SolverMode::Markovian);
    const Matrix m100 = dissipator(x, 100.0, s.model, s.tables, SolverMode::Markovian);
    CHECK(max_abs(m1 - m10) == 0.0);
    CHECK(max_abs(m1 - m100) == 0.0);
}

TEST_CASE("dissipator matches the brute-force s-quadrature oracle") {
    const Setup s = paper_setup();
    std::mt19937_64 rng(11);
    const Matrix rho = test::random_hermitian(rng, 2);
    const Matrix table_path = dissipator(rho, 5.0, s.model, s.tables, SolverMode::Full);
    const Matrix brute = test::dissipator_bruteforce(rho, 5.0, s.model, s.bath);
    CHECK(max_abs(table_path - brute) < 1e-8);
}

TEST_CASE("pure-dephasing dissipator reduces to the scalar rate on the coherence") {
    // With zero drive the coupling commutes with h_s and the only Bohr
    // frequency is zero: D(|g><e|) = -conj(Gamma(0;0,tau)) |g><e|.
    BathSpec bath;
    bath.eta = 0.03;
    bath.omega_c = 2.2;
    bath.temperature = 4.0;
    const SystemModel model = qd_model(0.0, polaron_shift(bath), 0.0);
    const CorrelationTables tables = CorrelationTables::build(bath, model.bohr_frequencies());
    const Matrix x = sigma_minus(); // |g><e|
    for (double tau : {0.3, 1.0, 4.0}) {
        const Matrix d = dissipator(x, tau, model, tables, SolverMode::Full);
        const Complex rate = -std::conj(tables.gamma_cumulative(0.0, tau));
        CHECK(max_abs(d - rate * x) < 1e-13);
    }
}

TEST_CASE("inhomogeneous term: empty interval, decoupled bath, brute-force oracle") {
    const Setup s = paper_setup();
    std::mt19937_64 rng(13);
    const Matrix rho = test::random_density(rng, 2);

    CHECK(max_abs(inhomogeneous(rho, 1.0, 0.0, s.model, s.tables)) == 0.0);

    BathSpec free_bath = s.bath;
    free_bath.eta = 0.0;
    const CorrelationTables empty = CorrelationTables::build(free_bath, s.model.bohr_frequencies());
    CHECK(max_abs(inhomogeneous(rho, 1.0, kInfiniteTime, s.model, empty)) == 0.0);

    // infinite anchor
    const Matrix rho_frame = frame_rotate(rho, s.model.frame, 1.0);
    const Matrix table_path = inhomogeneous(rho_frame, 1.0, kInfiniteTime, s.model, s.tables);
    const Matrix brute = test::inhomogeneous_bruteforce(rho_frame, 1.0, kInfiniteTime, s.model,
                                                        s.bath, s.tables.s_max());
    CHECK(max_abs(table_path - brute) < 1e-8);

    // finite anchor
    const Matrix table_fin = inhomogeneous(rho_frame, 0.7, 3.3, s.model, s.tables);
    const Matrix brute_fin = test::inhomogeneous_bruteforce(rho_frame, 0.7, 3.3, s.model, s.bath,
                                                            s.tables.s_max());
    CHECK(max_abs(table_fin - brute_fin) < 1e-8);

    CHECK_THROWS_AS(inhomogeneous(rho, 1.0, -1.0, s.model, s.tables), std::invalid_argument);
}

TEST_CASE("trace annihilation for every generator") {
    const Setup s = paper_setup();
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix x = test::random_matrix(rng, 2);
        const Matrix rho = test::random_density(rng, 2);
        CHECK(std::abs(dissipator(x, 2.5, s.model, s.tables, SolverMode::Full).trace()) < 1e-12);
        CHECK(std::abs(dissipator(x, 2.5, s.model, s.tables, SolverMode::Markovian).trace()) < 1e-12);
        CHECK(std::abs(inhomogeneous(rho, 1.5, kInfiniteTime, s.model, s.tables).trace()) < 1e-12);
        CHECK(std::abs(lindblad_term(x, s.model).trace()) < 1e-12);
        CHECK(std::abs(rhs_physical(rho, 2.0, s.model, s.tables, SolverMode::Full).trace()) < 1e-12);
        CHECK(std::abs(rhs_effective(x, rho, 2.0, kInfiniteTime, s.model, s.tables,
                                     SolverMode::Full).trace()) < 1e-12);
    }
}

TEST_CASE("adjoint covariance of the homogeneous generators") {
    const Setup s = paper_setup();
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix x = test::random_matrix(rng, 2);
        const Matrix xd = x.adjoint();
        for (SolverMode mode : {SolverMode::Markovian, SolverMode::Naive, SolverMode::Full}) {
            const Matrix d = dissipator(x, 3.0, s.model, s.tables, mode);
            CHECK(max_abs(dissipator(xd, 3.0, s.model, s.tables, mode) - d.adjoint()) < 1e-13);
        }
        CHECK(max_abs(lindblad_term(xd, s.model) - lindblad_term(x, s.model).adjoint()) < 1e-13);
        const Matrix p = rhs_physical(x, 2.0, s.model, s.tables, SolverMode::Full);
        CHECK(max_abs(rhs_physical(xd, 2.0, s.model, s.tables, SolverMode::Full) - p.adjoint()) <
              1e-13);
        // effective generator without the inhomogeneous term is the same linear map
        const Matrix rho = test::random_density(rng, 2);
        const Matrix e = rhs_effective(x, rho, 2.0, kInfiniteTime, s.model, s.tables,
                                       SolverMode::Naive);
        CHECK(max_abs(rhs_effective(xd, rho, 2.0, kInfiniteTime, s.model, s.tables,
                                    SolverMode::Naive) - e.adjoint()) < 1e-13);
    }
}

TEST_CASE("hermiticity preservation of the physical right-hand side") {
    const Setup s = paper_setup();
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix rho = test::random_hermitian(rng, 2);
        CHECK(hermiticity_defect(rhs_physical(rho, 1.0, s.model, s.tables, SolverMode::Full)) <
              1e-13);
    }
}

TEST_CASE("rhs_physical: stationary dark state and the decoupled Bloch limit") {
    const Setup s = paper_setup(0.0, 0.01); // no drive
    CHECK(max_abs(rhs_physical(ground_projector(), 3.0, s.model, s.tables, SolverMode::Full)) <
          1e-14);

    // eta = 0 reduces to the textbook optical Bloch right-hand side
    BathSpec free_bath;
    free_bath.eta = 0.0;
    free_bath.omega_c = 2.2;
    free_bath.temperature = 4.0;
    const SystemModel driven = qd_model(0.12, 0.0, 0.01);
    const CorrelationTables empty = CorrelationTables::build(free_bath, driven.bohr_frequencies());
    std::mt19937_64 rng(29);
    const Complex i_unit(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix rho = test::random_density(rng, 2);
        const Matrix bloch =
            -i_unit * (driven.h_s * rho - rho * driven.h_s) +
            0.01 * (sigma_minus() * rho * sigma_plus() -
                    0.5 * (excited_projector() * rho + rho * excited_projector()));
        CHECK(max_abs(rhs_physical(rho, 5.0, driven, empty, SolverMode::Full) - bloch) < 1e-14);
    }
}

TEST_CASE("rhs_effective: mode relations") {
    const Setup s = paper_setup();
    std::mt19937_64 rng(31);
    const Matrix lam = test::random_matrix(rng, 2);
    const Matrix rho = test::random_density(rng, 2);

    // full with t = 0 is exactly naive
    const Matrix full0 = rhs_effective(lam, rho, 2.0, 0.0, s.model, s.tables, SolverMode::Full);
    const Matrix naive = rhs_effective(lam, rho, 2.0, kInfiniteTime, s.model, s.tables,
                                       SolverMode::Naive);
    CHECK(max_abs(full0 - naive) == 0.0);

    // eta = 0: all modes coincide
    BathSpec free_bath = s.bath;
    free_bath.eta = 0.0;
    const CorrelationTables empty = CorrelationTables::build(free_bath, s.model.bohr_frequencies());
    const Matrix a = rhs_effective(lam, rho, 2.0, kInfiniteTime, s.model, empty, SolverMode::Full);
    const Matrix b = rhs_effective(lam, rho, 2.0, kInfiniteTime, s.model, empty, SolverMode::Naive);
    const Matrix c = rhs_effective(lam, rho, 2.0, kInfiniteTime, s.model, empty,
                                   SolverMode::Markovian);
    CHECK(max_abs(a - b) == 0.0);
    CHECK(max_abs(a - c) == 0.0);

    // Markovian regression identity: the effective generator equals the
    // physical generator applied to the same matrix argument
    for (double tau : {1.0, 10.0, 100.0}) {
        const Matrix eff = rhs_effective(lam, rho, tau, kInfiniteTime, s.model, s.tables,
                                         SolverMode::Markovian);
        const Matrix phys = rhs_physical(lam, tau, s.model, s.tables, SolverMode::Markovian);
        CHECK(max_abs(eff - phys) < 1e-14);
    }
}
