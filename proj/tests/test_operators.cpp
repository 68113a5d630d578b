#include "nmregress/operators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nmregress;

namespace {

Matrix qd_hamiltonian(double detuning, double rabi) {
    return detuning * excited_projector() + 0.5 * rabi * (sigma_plus() + sigma_minus());
}

} // namespace

TEST_CASE("eigendecompose: identity and closed-form two-level spectra") {
    const EigenFrame id_frame = eigendecompose(identity_op(2));
    CHECK(id_frame.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(id_frame.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));

    // pure drive: eigenvalues -/+ rabi/2
    const EigenFrame drive = eigendecompose(qd_hamiltonian(0.0, 0.12));
    CHECK(drive.eigenvalues(0) == doctest::Approx(-0.06).epsilon(1e-12));
    CHECK(drive.eigenvalues(1) == doctest::Approx(+0.06).epsilon(1e-12));

    // detuned drive: (detuning -/+ sqrt(detuning^2 + rabi^2)) / 2
    const double detuning = 0.1416, rabi = 0.12;
    const double split = std::sqrt(detuning * detuning + rabi * rabi);
    const EigenFrame frame = eigendecompose(qd_hamiltonian(detuning, rabi));
    CHECK(frame.eigenvalues(0) == doctest::Approx(0.5 * (detuning - split)).epsilon(1e-12));
    CHECK(frame.eigenvalues(1) == doctest::Approx(0.5 * (detuning + split)).epsilon(1e-12));

    // reconstruction and unitarity
    const Matrix h = qd_hamiltonian(detuning, rabi);
    const Matrix rebuilt = frame.eigenvectors * frame.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                           frame.eigenvectors.adjoint();
    CHECK(max_abs(rebuilt - h) < 1e-10 * std::max(1.0, max_abs(h)));
    CHECK(max_abs(frame.eigenvectors * frame.eigenvectors.adjoint() - identity_op(2)) < 1e-12);
}

TEST_CASE("eigendecompose rejects bad input") {
    Matrix non_hermitian = Matrix::Zero(2, 2);
    non_hermitian(0, 1) = 1.0;
    CHECK_THROWS_AS(eigendecompose(non_hermitian), std::invalid_argument);
    CHECK_THROWS_AS(eigendecompose(Matrix::Identity(1, 1)), std::invalid_argument);
}

TEST_CASE("frame_rotate: identity at s=0, invariance of the Hamiltonian, expm oracle") {
    const Matrix h = qd_hamiltonian(0.0, 0.12);
    const EigenFrame frame = eigendecompose(h);
    std::mt19937_64 rng(31);
    const Matrix x = test::random_matrix(rng, 2);

    CHECK(max_abs(frame_rotate(x, frame, 0.0) - x) < 1e-14);
    CHECK(max_abs(frame_rotate(h, frame, 3.7) - h) < 1e-13);

    // a full drive period returns sigma to itself (up to roundoff)
    const double period = 2.0 * std::numbers::pi / 0.12;
    CHECK(max_abs(frame_rotate(sigma_minus(), frame, period) - sigma_minus()) < 1e-12);

    // brute-force matrix-exponential oracle at several times
    const Complex i_unit(0.0, 1.0);
    for (double s : {0.3, 2.0, 17.5, -4.2}) {
        const Matrix u = test::expm(-i_unit * s * h);
        CHECK(max_abs(frame_rotate(x, frame, s) - u * x * u.adjoint()) < 1e-12);
    }

    // trace and Hermiticity preserved
    const Matrix hermitian = test::random_hermitian(rng, 2);
    const Matrix rotated = frame_rotate(hermitian, frame, 1.3);
    CHECK(std::abs(rotated.trace() - hermitian.trace()) < 1e-13);
    CHECK(hermiticity_defect(rotated) < 1e-13);

    CHECK_THROWS_AS(frame_rotate(Matrix::Identity(3, 3), frame, 1.0), std::invalid_argument);
}

TEST_CASE("bohr_decompose: frequencies, reconstruction, rotation property") {
    const double rabi = 0.12;

    // identity commutes: single zero-frequency term
    const EigenFrame drive = eigendecompose(qd_hamiltonian(0.0, rabi));
    const BohrDecomposition id_dec = bohr_decompose(identity_op(2), drive);
    CHECK(id_dec.terms.size() == 1);
    CHECK(id_dec.terms[0].omega == doctest::Approx(0.0));

    // sigma† sigma against the drive: frequencies {-rabi, 0, +rabi}
    const BohrDecomposition n_dec = bohr_decompose(excited_projector(), drive);
    REQUIRE(n_dec.terms.size() == 3);
    CHECK(n_dec.terms[0].omega == doctest::Approx(-rabi).epsilon(1e-12));
    CHECK(n_dec.terms[1].omega == doctest::Approx(0.0));
    CHECK(n_dec.terms[2].omega == doctest::Approx(+rabi).epsilon(1e-12));

    // generic detuning: {0, +/- sqrt(detuning^2 + rabi^2)}
    const double detuning = 0.1416;
    const double split = std::sqrt(detuning * detuning + rabi * rabi);
    const EigenFrame frame = eigendecompose(qd_hamiltonian(detuning, rabi));
    const BohrDecomposition dec = bohr_decompose(excited_projector(), frame);
    REQUIRE(dec.terms.size() == 3);
    CHECK(dec.terms[0].omega == doctest::Approx(-split).epsilon(1e-12));
    CHECK(dec.terms[2].omega == doctest::Approx(+split).epsilon(1e-12));
    CHECK(max_abs(dec.sum() - excited_projector()) < 1e-12);
}

TEST_CASE("bohr_decompose rotation property on random operators") {
    std::mt19937_64 rng(17);
    const Complex i_unit(0.0, 1.0);
    std::uniform_real_distribution<double> time(-10.0, 10.0);
    for (int d : {2, 3}) {
        for (int trial = 0; trial < 10; ++trial) {
            const Matrix h = test::random_hermitian(rng, d);
            const EigenFrame frame = eigendecompose(h);
            const Matrix a = test::random_hermitian(rng, d);
            const BohrDecomposition dec = bohr_decompose(a, frame);
            CHECK(max_abs(dec.sum() - a) < 1e-10);
            for (int k = 0; k < 20; ++k) {
                const double s = time(rng);
                const Matrix u = test::expm(-i_unit * s * h);
                Matrix resummed = Matrix::Zero(d, d);
                for (const auto& term : dec.terms) {
                    resummed += std::exp(-i_unit * term.omega * s) * term.op;
                }
                CHECK(max_abs(resummed - u * a * u.adjoint()) < 1e-10);
            }
        }
    }
}

TEST_CASE("trace_distance: known pairs and metric property") {
    const Matrix plus = 0.5 * (identity_op(2) + sigma_y());
    const Matrix minus = 0.5 * (identity_op(2) - sigma_y());
    CHECK(trace_distance(plus, plus) == doctest::Approx(0.0));
    CHECK(trace_distance(plus, minus) == doctest::Approx(1.0).epsilon(1e-13));

    Matrix pure = Matrix::Zero(2, 2);
    pure(0, 0) = 1.0;
    CHECK(trace_distance(pure, 0.5 * identity_op(2)) == doctest::Approx(0.5).epsilon(1e-13));

    CHECK_THROWS_AS(trace_distance(sigma_minus(), sigma_minus()), std::invalid_argument);

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = test::random_density(rng, 2);
        const Matrix b = test::random_density(rng, 2);
        const Matrix c = test::random_density(rng, 2);
        CHECK(trace_distance(a, b) == doctest::Approx(trace_distance(b, a)).epsilon(1e-12));
        CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12);
    }
}
