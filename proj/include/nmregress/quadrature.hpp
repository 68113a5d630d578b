// quadrature.hpp — Adaptive Gauss-Kronrod integration and fixed
// Gauss-Legendre panel rules for the bath integrals.

#pragma once

#include "nmregress/types.hpp"

#include <functional>
#include <vector>

namespace nmregress {

struct AdaptiveResult {
    Complex value;
    double error_estimate = 0.0;
    int intervals = 0;
};

// Globally adaptive 15-point Gauss-Kronrod rule on [a, b], starting from
// `initial_panels` equal panels (pass enough panels for oscillatory
// integrands so each panel sees at most ~pi of phase; the per-panel error
// estimate is unreliable otherwise). Subdivides the panel with the largest
// error estimate until the total error drops below
// max(abs_tol, rel_tol * |value|, roundoff floor). Throws numerical_error
// (reporting the achieved estimate) if the subdivision budget is exhausted.
AdaptiveResult integrate_adaptive(const std::function<Complex(double)>& f, double a, double b,
                                  double rel_tol = 1e-11, double abs_tol = 1e-15,
                                  int max_intervals = 4000, int initial_panels = 1);

// Nodes and weights of a composite 16-point Gauss-Legendre rule with
// `panels` equal panels on [a, b].
struct PanelRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
PanelRule composite_gauss_legendre(double a, double b, int panels);

} // namespace nmregress
