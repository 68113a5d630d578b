// validate.hpp — Built-in oracle suite behind the `validate` subcommand:
// optical-Bloch cross-checks (algebraic steady state and matrix-exponential
// correlation function), Mollow triplet position/width checks, the
// independent-boson decoherence law, the Fourier sum rule, and the
// scalar/SIMD kernel equivalence.

#pragma once

#include "nmregress/types.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace nmregress {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

ValidationReport run_validation_suite(std::ostream& log);

// --------------------------- oracle pieces -----------------------------------
// These are independent computation routes used by the suite and by tests;
// they never call the table-driven generators or the RK propagator.

// vec(A X B) = kron(B^T, A) vec(X), column-major vec
Matrix superop_kron(const Matrix& a, const Matrix& b_transposed_factor);

// Liouvillian matrix of the driven damped two-level system (no phonons)
Matrix bloch_liouvillian(double rabi, double detuning, double gamma_sp);

// Trace-one null vector of a Liouvillian, hermitized
Matrix liouvillian_steady_state(const Matrix& liouville);

// g1(tau_k) = Tr[sigma† e^{L tau_k}(sigma rho_ss)] through the eigensystem of L
std::vector<Complex> bloch_g1_expm(double rabi, double detuning, double gamma_sp,
                                   const std::vector<double>& tau);

// Re Phi(tau) of the independent-boson decoherence law for the given bath
double ibm_decoherence_exponent(double tau, const struct BathSpec& spec);

// peak location/height/half-width measured on a sampled spectrum
struct PeakShape {
    double position = 0.0;
    double height = 0.0;
    double hwhm = 0.0;
};
PeakShape measure_peak(const std::vector<double>& domega, const std::vector<double>& values,
                       double center, double search_halfwidth);

} // namespace nmregress
