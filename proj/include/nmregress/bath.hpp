// bath.hpp — Super-Ohmic phonon bath: spectral density, polaron shift,
// thermal correlation function C(s), and the one-sided Fourier rate
// integrals Gamma(omega; a, b) = int_a^b C(s) e^{i omega s} ds held in
// precomputed tables.
//
// Conventions. All frequencies in ps^-1, times in ps, temperature in K.
// With n(w) the thermal occupation of the reference state,
//
//   C(s) = int_0^inf dw J(w) [ coth(w / (2 kB T / hbar)) cos(w s) - i sin(w s) ]
//        = <B(s) B(0)> for the displacement coupling B = sum_k g_k (b_k + b_k†),
//
// so that Re Gamma(w; 0, inf) = (pi/2) J(w) [coth(hbar w / 2 kB T) + 1] >= 0.

#pragma once

#include "nmregress/quadrature.hpp"
#include "nmregress/types.hpp"

#include <span>
#include <vector>

namespace nmregress {

struct BathSpec {
    double eta = 0.0;            // coupling strength, ps^2
    double omega_c = 1.0;        // cutoff frequency, ps^-1
    double temperature = 0.0;    // K
    double kB_over_hbar = 0.1309; // ps^-1 K^-1; configurable only for unit tests

    void validate() const;
    // kB T / hbar in ps^-1
    double thermal_freq() const { return kB_over_hbar * temperature; }
    // integration domain cutoff; the Gaussian integrand is < 1e-50 beyond
    double omega_max() const { return 12.0 * omega_c; }
};

// J(w) = eta w^3 exp[-(w/w_c)^2]; throws for negative w
double spectral_density(double omega, const BathSpec& spec);

// int_0^inf J(w)/w dw = eta (sqrt(pi)/4) w_c^3 (closed form for this family)
double polaron_shift(const BathSpec& spec);

// J(w) coth(w / (2 kB T/hbar)) with the finite w -> 0 limit; coth == 1 at T = 0
double thermal_weighted_density(double omega, const BathSpec& spec);

// Single-point adaptive evaluation of C(s) with an error estimate.
AdaptiveResult correlation_adaptive(double s, const BathSpec& spec, double rel_tol = 1e-11);
Complex correlation(double s, const BathSpec& spec);

// Fixed composite Gauss-Legendre discretisation of the frequency integral,
// with the J coth and J factors folded into the weights. This is the grid
// the SIMD kernels run over.
struct FrequencyGrid {
    std::vector<double> nodes;         // w_i
    std::vector<double> jcoth_weights; // quadrature weight * J(w_i) coth(...)
    std::vector<double> j_weights;     // quadrature weight * J(w_i)

    static FrequencyGrid build(const BathSpec& spec, int panels = 128);
};

// C(s) for a batch of times through the dispatched trig kernels
void correlation_batch(const FrequencyGrid& grid, std::span<const double> s,
                       std::span<Complex> out);

struct TableGrid {
    double s_max = 25.0;  // ps
    double step = 0.005;  // ps
};

// Precomputed C(s) on a uniform s grid together with the cumulative rate
// integrals Gamma(w_j; 0, s) for a fixed set of Bohr frequencies. Off-grid
// limits are interpolated consistently with the trapezoid accumulation
// (integrand treated as piecewise linear within a cell). Immutable after
// construction.
class CorrelationTables {
public:
    static CorrelationTables build(const BathSpec& spec, std::span<const double> bohr_freqs,
                                   TableGrid grid = {}, int panels = 128);

    // Gamma(w; 0, tau); tau >= s_max saturates to Gamma(w; 0, inf)
    Complex gamma_cumulative(double omega, double tau) const;
    // Gamma(w; tau, inf)
    Complex gamma_tail(double omega, double tau) const;
    // Gamma(w; a, b) for 0 <= a <= b (b may exceed s_max)
    Complex gamma_between(double omega, double a, double b) const;
    Complex gamma_infinity(double omega) const;

    const std::vector<double>& s_grid() const { return s_; }
    const std::vector<Complex>& c_values() const { return c_; }
    const std::vector<double>& frequencies() const { return freqs_; }
    double s_max() const { return s_.back(); }
    double tail_bound() const { return tail_bound_; }

private:
    std::size_t index_of(double omega) const; // throws numerical_error if missing

    std::vector<double> freqs_;
    std::vector<double> s_;
    std::vector<Complex> c_;
    std::vector<std::vector<Complex>> integrand_;  // C(s_i) e^{i w_j s_i}
    std::vector<std::vector<Complex>> cumulative_; // Gamma(w_j; 0, s_i)
    double step_ = 0.0;
    double tail_bound_ = 0.0;
};

} // namespace nmregress
