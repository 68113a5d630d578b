// observables.hpp — First-order correlation traces, the incoherent emission
// spectrum via direct half-line Fourier quadrature, and sideband power
// metrics.

#pragma once

#include "nmregress/propagation.hpp"
#include "nmregress/types.hpp"

#include <vector>

namespace nmregress {

struct G1Trace {
    std::vector<double> tau;      // ps
    std::vector<Complex> values;  // Tr[emission_op† Lambda(tau)]
    Complex g1_infinity{0.0, 0.0};
    bool plateau_reached = false;
    double plateau_residual = 0.0; // |values.back() - g1_infinity|
    SolverMode mode = SolverMode::Markovian;
    double max_trace_defect = 0.0;
};

// Steady-state correlation function: anchor = steady state, t -> infinity.
G1Trace compute_g1(const SystemModel& model, const CorrelationTables& tables, SolverMode mode,
                   const SimConfig& cfg);

// Anchored at a caller-supplied physical state and finite (or infinite) t;
// used by the validation runs.
G1Trace compute_g1_anchored(const Matrix& rho_anchor, double t_anchor, double tau_end,
                            const SystemModel& model, const CorrelationTables& tables,
                            SolverMode mode, const SimConfig& cfg);

// Reduce an effective-operator trajectory to a G1 trace. The plateau value is
// the mean over the trailing `plateau_window` ps.
G1Trace g1_from_trajectory(const Trajectory& traj, const SystemModel& model,
                           double plateau_window = 50.0);

struct Spectrum {
    std::vector<double> domega; // ps^-1, uniform, symmetric about 0
    std::vector<double> values;
    double sum_rule_integral = 0.0; // int S dDw
    double sum_rule_target = 0.0;   // pi Re(g1(0) - g1(inf))
    bool negativity_warning = false;
};

// S(Dw) = Re int_0^inf dtau (g1(tau) - g1(inf)) e^{-i Dw tau} by trapezoid
// quadrature on the (two-scale) tau grid. Throws if the dense part of the tau
// grid undersamples the requested frequency window (step > pi / (4 w_max)).
Spectrum spectrum(const G1Trace& trace, double omega_max = 8.0, int n_points = 16001);

// Fraction of total power outside |Dw| <= window. Negative spectral values
// integrate as-is.
double sideband_fraction(const Spectrum& spec, double window_halfwidth = 0.5);

// (P(Dw < -window) - P(Dw > +window)) / (sum of the two)
double sideband_asymmetry(const Spectrum& spec, double window_halfwidth = 0.5);

// Trapezoid integral of the spectrum over [lo, hi] (clamped to the grid,
// linear interpolation at the window edges).
double spectrum_integral(const Spectrum& spec, double lo, double hi);

} // namespace nmregress
