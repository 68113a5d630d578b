#include "nmregress/observables.hpp"

#include "nmregress/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nmregress {

G1Trace g1_from_trajectory(const Trajectory& traj, const SystemModel& model,
                           double plateau_window) {
    G1Trace trace;
    trace.tau = traj.grid;
    trace.mode = traj.mode;
    trace.max_trace_defect = traj.max_trace_defect;
    trace.values.reserve(traj.states.size());
    const Matrix observable = model.emission_op.adjoint();
    for (const auto& lam : traj.states) {
        trace.values.push_back((observable * lam).trace());
    }

    const double tail_start = trace.tau.back() - plateau_window;
    Complex mean = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < trace.tau.size(); ++i) {
        if (trace.tau[i] >= tail_start) {
            mean += trace.values[i];
            ++count;
        }
    }
    trace.g1_infinity = (count > 0) ? mean / static_cast<double>(count) : trace.values.back();
    trace.plateau_residual = std::abs(trace.values.back() - trace.g1_infinity);
    trace.plateau_reached = trace.plateau_residual < 1e-6 * std::abs(trace.values.front());
    return trace;
}

G1Trace compute_g1(const SystemModel& model, const CorrelationTables& tables, SolverMode mode,
                   const SimConfig& cfg) {
    const Matrix rho_ss = steady_state(model, tables, mode, cfg);
    const Trajectory traj =
        integrate_effective(rho_ss, cfg.tau_end, kInfiniteTime, model, tables, mode, cfg);
    return g1_from_trajectory(traj, model);
}

G1Trace compute_g1_anchored(const Matrix& rho_anchor, double t_anchor, double tau_end,
                            const SystemModel& model, const CorrelationTables& tables,
                            SolverMode mode, const SimConfig& cfg) {
    const Trajectory traj =
        integrate_effective(rho_anchor, tau_end, t_anchor, model, tables, mode, cfg);
    return g1_from_trajectory(traj, model);
}

Spectrum spectrum(const G1Trace& trace, double omega_max, int n_points) {
    if (trace.tau.size() < 3) throw std::invalid_argument("spectrum: g1 trace too short");
    if (!(omega_max > 0.0) || n_points < 3) {
        throw std::invalid_argument("spectrum: bad frequency grid request");
    }

    // Nyquist-style guard on the dense part of the tau grid
    const double dense_end = std::min(25.0, trace.tau.back());
    double dense_step_max = 0.0;
    for (std::size_t i = 1; i < trace.tau.size() && trace.tau[i] <= dense_end + 1e-12; ++i) {
        dense_step_max = std::max(dense_step_max, trace.tau[i] - trace.tau[i - 1]);
    }
    const double step_limit = std::numbers::pi / (4.0 * omega_max);
    if (dense_step_max > step_limit) {
        throw config_error("spectrum: tau grid too coarse for omega_max (dense step " +
                           std::to_string(dense_step_max) + " > " + std::to_string(step_limit) +
                           ")");
    }

    const std::size_t n = trace.tau.size();
    std::vector<double> wc(n), ws(n);
    for (std::size_t i = 0; i < n; ++i) {
        double w;
        if (i == 0) {
            w = 0.5 * (trace.tau[1] - trace.tau[0]);
        } else if (i == n - 1) {
            w = 0.5 * (trace.tau[n - 1] - trace.tau[n - 2]);
        } else {
            w = 0.5 * (trace.tau[i + 1] - trace.tau[i - 1]);
        }
        const Complex f = trace.values[i] - trace.g1_infinity;
        wc[i] = w * f.real();
        ws[i] = w * f.imag();
    }

    Spectrum spec;
    spec.domega.resize(n_points);
    spec.values.resize(n_points);
    const double dw = 2.0 * omega_max / (n_points - 1);
    std::vector<double> cos_out(n_points), sin_out(n_points);
    for (int k = 0; k < n_points; ++k) spec.domega[k] = -omega_max + k * dw;
    kernels::weighted_cos_sin_batch(trace.tau.data(), wc.data(), ws.data(), n, spec.domega.data(),
                                    spec.domega.size(), cos_out.data(), sin_out.data());
    // Re[(re + i im) e^{-i Dw tau}] = re cos(Dw tau) + im sin(Dw tau)
    for (int k = 0; k < n_points; ++k) spec.values[k] = cos_out[k] + sin_out[k];

    double integral = 0.0;
    for (int k = 1; k < n_points; ++k) {
        integral += 0.5 * dw * (spec.values[k] + spec.values[k - 1]);
    }
    spec.sum_rule_integral = integral;
    spec.sum_rule_target =
        std::numbers::pi * (trace.values.front() - trace.g1_infinity).real();

    const double s_max = *std::max_element(spec.values.begin(), spec.values.end());
    const double s_min = *std::min_element(spec.values.begin(), spec.values.end());
    spec.negativity_warning = s_min < -0.01 * s_max;
    return spec;
}

double spectrum_integral(const Spectrum& spec, double lo, double hi) {
    const double grid_lo = spec.domega.front();
    const double grid_hi = spec.domega.back();
    lo = std::max(lo, grid_lo);
    hi = std::min(hi, grid_hi);
    if (!(hi > lo)) return 0.0;
    const double dw = spec.domega[1] - spec.domega[0];
    auto value_at = [&](double w) {
        const double pos = std::max((w - grid_lo) / dw, 0.0);
        std::size_t i = std::min(static_cast<std::size_t>(pos), spec.values.size() - 2);
        const double frac = pos - static_cast<double>(i);
        return spec.values[i] * (1.0 - frac) + spec.values[i + 1] * frac;
    };
    const auto first_inside = static_cast<std::size_t>(std::ceil((lo - grid_lo) / dw - 1e-12));
    const auto last_inside = static_cast<std::size_t>(std::floor((hi - grid_lo) / dw + 1e-12));
    if (first_inside > last_inside) {
        // window inside one cell
        return 0.5 * (value_at(lo) + value_at(hi)) * (hi - lo);
    }
    double integral = 0.0;
    for (std::size_t i = first_inside; i < last_inside; ++i) {
        integral += 0.5 * dw * (spec.values[i] + spec.values[i + 1]);
    }
    const double lo_edge = grid_lo + first_inside * dw;
    const double hi_edge = grid_lo + last_inside * dw;
    if (lo < lo_edge) integral += 0.5 * (value_at(lo) + spec.values[first_inside]) * (lo_edge - lo);
    if (hi > hi_edge) integral += 0.5 * (spec.values[last_inside] + value_at(hi)) * (hi - hi_edge);
    return integral;
}

double sideband_fraction(const Spectrum& spec, double window_halfwidth) {
    if (window_halfwidth > spec.domega.back()) {
        throw std::invalid_argument("sideband_fraction: window exceeds spectrum grid");
    }
    const double total = spectrum_integral(spec, spec.domega.front(), spec.domega.back());
    const double inner = spectrum_integral(spec, -window_halfwidth, window_halfwidth);
    return 1.0 - inner / total;
}

double sideband_asymmetry(const Spectrum& spec, double window_halfwidth) {
    if (window_halfwidth > spec.domega.back()) {
        throw std::invalid_argument("sideband_asymmetry: window exceeds spectrum grid");
    }
    const double low = spectrum_integral(spec, spec.domega.front(), -window_halfwidth);
    const double high = spectrum_integral(spec, window_halfwidth, spec.domega.back());
    return (low - high) / (low + high);
}

} // namespace nmregress
