#include "nmregress/bath.hpp"

#include "nmregress/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nmregress {

void BathSpec::validate() const {
    if (eta < 0.0) throw config_error("bath: eta must be >= 0");
    if (!(omega_c > 0.0)) throw config_error("bath: omega_c must be > 0");
    if (temperature < 0.0) throw config_error("bath: temperature must be >= 0");
    if (!(kB_over_hbar > 0.0)) throw config_error("bath: kB_over_hbar must be > 0");
}

double spectral_density(double omega, const BathSpec& spec) {
    if (omega < 0.0) {
        throw std::invalid_argument("spectral_density: omega must be >= 0");
    }
    const double u = omega / spec.omega_c;
    return spec.eta * omega * omega * omega * std::exp(-u * u);
}

double polaron_shift(const BathSpec& spec) {
    // int_0^inf w^2 exp[-(w/w_c)^2] dw = (sqrt(pi)/4) w_c^3
    const double wc = spec.omega_c;
    return spec.eta * (std::sqrt(std::numbers::pi) / 4.0) * wc * wc * wc;
}

double thermal_weighted_density(double omega, const BathSpec& spec) {
    const double j = spectral_density(omega, spec);
    const double kt = spec.thermal_freq();
    if (kt == 0.0) {
        return j; // coth -> 1 limit
    }
    const double x = omega / (2.0 * kt);
    if (x < 1e-4) {
        // J(w) (1/x + x/3): the w -> 0 limit is 2 eta kT w^2, no division by w
        const double u = omega / spec.omega_c;
        return spec.eta * std::exp(-u * u) *
               (2.0 * kt * omega * omega + omega * omega * omega * omega / (6.0 * kt));
    }
    return j / std::tanh(x);
}

AdaptiveResult correlation_adaptive(double s, const BathSpec& spec, double rel_tol) {
    if (s < 0.0) throw std::invalid_argument("correlation: s must be >= 0");
    spec.validate();
    auto integrand = [&](double w) -> Complex {
        return Complex(thermal_weighted_density(w, spec) * std::cos(w * s),
                       -spectral_density(w, spec) * std::sin(w * s));
    };
    // resolve the oscillation: at most ~pi of phase per initial panel
    const int panels = std::max(4, static_cast<int>(std::ceil(spec.omega_max() * s / 3.0)));
    return integrate_adaptive(integrand, 0.0, spec.omega_max(), rel_tol, 1e-15, 4000, panels);
}

Complex correlation(double s, const BathSpec& spec) {
    return correlation_adaptive(s, spec).value;
}

FrequencyGrid FrequencyGrid::build(const BathSpec& spec, int panels) {
    spec.validate();
    PanelRule rule = composite_gauss_legendre(0.0, spec.omega_max(), panels);
    FrequencyGrid grid;
    grid.nodes = std::move(rule.nodes);
    grid.jcoth_weights.resize(grid.nodes.size());
    grid.j_weights.resize(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        grid.jcoth_weights[i] = rule.weights[i] * thermal_weighted_density(grid.nodes[i], spec);
        grid.j_weights[i] = rule.weights[i] * spectral_density(grid.nodes[i], spec);
    }
    return grid;
}

void correlation_batch(const FrequencyGrid& grid, std::span<const double> s,
                       std::span<Complex> out) {
    if (out.size() != s.size()) {
        throw std::invalid_argument("correlation_batch: output size mismatch");
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto sums = kernels::weighted_cos_sin(grid.nodes.data(), grid.jcoth_weights.data(),
                                                    grid.j_weights.data(), grid.nodes.size(), s[k]);
        out[k] = Complex(sums.cos_sum, -sums.sin_sum);
    }
}

CorrelationTables CorrelationTables::build(const BathSpec& spec,
                                           std::span<const double> bohr_freqs, TableGrid grid,
                                           int panels) {
    spec.validate();
    if (!(grid.s_max > 0.0) || !(grid.step > 0.0) || grid.step > grid.s_max) {
        throw std::invalid_argument("CorrelationTables: bad s grid");
    }

    CorrelationTables t;
    t.step_ = grid.step;
    const std::size_t n = static_cast<std::size_t>(std::llround(grid.s_max / grid.step)) + 1;
    t.s_.resize(n);
    for (std::size_t i = 0; i < n; ++i) t.s_[i] = static_cast<double>(i) * grid.step;

    t.c_.resize(n);
    const FrequencyGrid fgrid = FrequencyGrid::build(spec, panels);
    correlation_batch(fgrid, t.s_, t.c_);

    for (double w : bohr_freqs) {
        const bool known = std::any_of(t.freqs_.begin(), t.freqs_.end(),
                                       [&](double v) { return std::abs(v - w) < 1e-9; });
        if (!known) t.freqs_.push_back(w);
    }

    t.integrand_.resize(t.freqs_.size());
    t.cumulative_.resize(t.freqs_.size());
    double gamma_scale = 0.0;
    for (std::size_t j = 0; j < t.freqs_.size(); ++j) {
        auto& f = t.integrand_[j];
        auto& cum = t.cumulative_[j];
        f.resize(n);
        cum.resize(n);
        const double w = t.freqs_[j];
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = t.c_[i] * std::exp(Complex(0.0, w * t.s_[i]));
        }
        cum[0] = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            cum[i] = cum[i - 1] + 0.5 * grid.step * (f[i - 1] + f[i]);
        }
        gamma_scale = std::max(gamma_scale, std::abs(cum.back()));
    }

    // Remainder beyond s_max, estimated from the decayed |C| near the end of
    // the grid. Must stay below 1e-12 of the rate integrals themselves.
    double c_end = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (t.s_[i] >= grid.s_max - 1.0) c_end = std::max(c_end, std::abs(t.c_[i]));
    }
    t.tail_bound_ = 5.0 * c_end;
    if (gamma_scale > 0.0 && t.tail_bound_ > 1e-12 * gamma_scale) {
        throw numerical_error("CorrelationTables: s_max too small for requested tail accuracy "
                              "(remainder bound " + std::to_string(t.tail_bound_) + ")");
    }
    return t;
}

std::size_t CorrelationTables::index_of(double omega) const {
    for (std::size_t j = 0; j < freqs_.size(); ++j) {
        if (std::abs(freqs_[j] - omega) < 1e-9) return j;
    }
    throw numerical_error("CorrelationTables: missing Bohr frequency " + std::to_string(omega));
}

Complex CorrelationTables::gamma_cumulative(double omega, double tau) const {
    const std::size_t j = index_of(omega);
    if (tau < 0.0) throw std::invalid_argument("gamma_cumulative: tau must be >= 0");
    const auto& cum = cumulative_[j];
    if (tau >= s_.back()) return cum.back();
    const auto& f = integrand_[j];
    std::size_t i = static_cast<std::size_t>(tau / step_);
    if (i > s_.size() - 2) i = s_.size() - 2;
    const double d = tau - s_[i];
    // quadratic in-cell interpolation, consistent with the trapezoid sums
    return cum[i] + f[i] * d + (f[i + 1] - f[i]) * (d * d / (2.0 * step_));
}

Complex CorrelationTables::gamma_infinity(double omega) const {
    return cumulative_[index_of(omega)].back();
}

Complex CorrelationTables::gamma_tail(double omega, double tau) const {
    if (tau >= s_.back()) return 0.0;
    return gamma_infinity(omega) - gamma_cumulative(omega, tau);
}

Complex CorrelationTables::gamma_between(double omega, double a, double b) const {
    if (a < 0.0 || b < a) throw std::invalid_argument("gamma_between: need 0 <= a <= b");
    return gamma_cumulative(omega, b) - gamma_cumulative(omega, a);
}

} // namespace nmregress
