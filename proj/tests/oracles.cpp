#include "oracles.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace nmregress::test {

Matrix expm(const Matrix& m) {
    return m.exp();
}

Matrix random_matrix(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            m(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    return m;
}

Matrix random_hermitian(std::mt19937_64& rng, int d) {
    const Matrix m = random_matrix(rng, d);
    return 0.5 * (m + m.adjoint().eval());
}

Matrix random_density(std::mt19937_64& rng, int d) {
    const Matrix m = random_matrix(rng, d);
    Matrix rho = m * m.adjoint();
    rho /= rho.trace().real();
    return rho;
}

namespace {

constexpr double kGl10Nodes[5] = {
    0.1488743389816312108848260, 0.4333953941292471907992659,
    0.6794095682990244062343274, 0.8650633666889845107320967,
    0.9739065285171717200779640,
};
constexpr double kGl10Weights[5] = {
    0.2955242247147528701738930, 0.2692667193099963550912269,
    0.2190863625159820439955349, 0.1494513491505805931457763,
    0.0666713443086881375935688,
};

} // namespace

Complex correlation_gl10(double s, const BathSpec& spec, int panels) {
    const double width = spec.omega_max() / panels;
    Complex total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width;
        for (int i = 0; i < 5; ++i) {
            for (double sign : {-1.0, 1.0}) {
                const double w = mid + sign * 0.5 * width * kGl10Nodes[i];
                const Complex f(thermal_weighted_density(w, spec) * std::cos(w * s),
                                -spectral_density(w, spec) * std::sin(w * s));
                total += 0.5 * width * kGl10Weights[i] * f;
            }
        }
    }
    return total;
}

Matrix bath_contraction_bruteforce(const Matrix& x, const Matrix* insert, const SystemModel& model,
                                   const BathSpec& bath, double a, double b, double h) {
    const Complex i_unit(0.0, 1.0);
    const Matrix& coupling = model.coupling;

    auto integrand = [&](double s) -> Matrix {
        const Matrix u = expm(-i_unit * s * model.h_s);
        const Matrix a_rot = u * coupling * u.adjoint();
        const Complex c = correlation(s, bath);
        Matrix y = c * (a_rot * x) - std::conj(c) * (x * a_rot);
        if (insert != nullptr) y = (*insert) * y;
        return -(coupling * y - y * coupling);
    };

    // Trapezoid on the canonical grid {k h}. Off-grid interval endpoints use
    // the integrand linearly interpolated between the bracketing grid nodes,
    // matching the declared piecewise-linear-in-the-integrand convention of
    // the rate tables.
    const auto k0 = static_cast<long>(std::floor(a / h + 1e-9));
    const auto k1 = static_cast<long>(std::ceil(b / h - 1e-9));
    std::vector<Matrix> f;
    f.reserve(static_cast<std::size_t>(k1 - k0) + 1);
    for (long k = k0; k <= k1; ++k) f.push_back(integrand(k * h));
    auto value_at = [&](double s) -> Matrix {
        const double pos = s / h - static_cast<double>(k0);
        auto i = static_cast<std::size_t>(pos);
        if (i + 1 >= f.size()) i = f.size() - 2;
        const double frac = pos - static_cast<double>(i);
        return (1.0 - frac) * f[i] + frac * f[i + 1];
    };

    Matrix total = Matrix::Zero(x.rows(), x.cols());
    std::vector<double> nodes{a};
    for (long k = k0 + 1; k < k1; ++k) {
        const double s = k * h;
        if (s > a + 1e-12 && s < b - 1e-12) nodes.push_back(s);
    }
    nodes.push_back(b);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        total += 0.5 * (nodes[i] - nodes[i - 1]) * (value_at(nodes[i - 1]) + value_at(nodes[i]));
    }
    return total;
}

Matrix dissipator_bruteforce(const Matrix& x, double tau, const SystemModel& model,
                             const BathSpec& bath, double h) {
    if (tau == 0.0) return Matrix::Zero(x.rows(), x.cols());
    return bath_contraction_bruteforce(x, nullptr, model, bath, 0.0, tau, h);
}

Matrix inhomogeneous_bruteforce(const Matrix& rho_frame, double tau, double t_anchor,
                                const SystemModel& model, const BathSpec& bath, double s_max,
                                double h) {
    const double upper = std::isinf(t_anchor) ? s_max : std::min(tau + t_anchor, s_max);
    if (upper <= tau) return Matrix::Zero(rho_frame.rows(), rho_frame.cols());
    const Complex i_unit(0.0, 1.0);
    const Matrix u = expm(-i_unit * tau * model.h_s);
    const Matrix b_rot = u * model.emission_op * u.adjoint();
    return bath_contraction_bruteforce(rho_frame, &b_rot, model, bath, tau, upper, h);
}

double ibm_exponent_discrete(double tau, const BathSpec& spec, int n_modes) {
    const double width = spec.omega_max() / n_modes;
    const double kt = spec.thermal_freq();
    double exponent = 0.0;
    for (int k = 0; k < n_modes; ++k) {
        const double w = (k + 0.5) * width;
        const double g2 = spectral_density(w, spec) * width;
        const double coth = (kt > 0.0) ? 1.0 / std::tanh(w / (2.0 * kt)) : 1.0;
        exponent += g2 / (w * w) * coth * (1.0 - std::cos(w * tau));
    }
    return exponent;
}

} // namespace nmregress::test
