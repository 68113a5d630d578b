#include "nmregress/validate.hpp"

#include "nmregress/bath.hpp"
#include "nmregress/config.hpp"
#include "nmregress/kernels.hpp"
#include "nmregress/observables.hpp"
#include "nmregress/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace nmregress {

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
}

Matrix superop_kron(const Matrix& a, const Matrix& b) {
    const auto ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    Matrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i) {
        for (Eigen::Index j = 0; j < ca; ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

// kron factors for vec(A X B) with column-major vec: kron(B^T, A)
Matrix left_mult(const Matrix& a) { return superop_kron(Matrix::Identity(a.rows(), a.cols()), a); }
Matrix right_mult(const Matrix& b) {
    return superop_kron(b.transpose(), Matrix::Identity(b.rows(), b.cols()));
}

Matrix unvec(const Eigen::VectorXcd& v, Eigen::Index d) {
    Matrix m(d, d);
    for (Eigen::Index j = 0; j < d; ++j) m.col(j) = v.segment(j * d, d);
    return m;
}

Eigen::VectorXcd vec(const Matrix& m) {
    Eigen::VectorXcd v(m.rows() * m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) v.segment(j * m.rows(), m.rows()) = m.col(j);
    return v;
}

Matrix tls_sigma() {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1.0;
    return s;
}

} // namespace

Matrix bloch_liouvillian(double rabi, double detuning, double gamma_sp) {
    const Matrix s = tls_sigma();
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = detuning;
    h(0, 1) += 0.5 * rabi;
    h(1, 0) += 0.5 * rabi;
    const Complex i_unit(0.0, 1.0);
    const Matrix n_op = s.adjoint() * s;
    Matrix liou = -i_unit * (left_mult(h) - right_mult(h));
    liou += gamma_sp * (superop_kron(s.conjugate(), s) -
                        0.5 * (left_mult(n_op) + right_mult(n_op)));
    return liou;
}

Matrix liouvillian_steady_state(const Matrix& liouville) {
    Eigen::ComplexEigenSolver<Matrix> solver(liouville);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("liouvillian_steady_state: eigensolver failed");
    }
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < solver.eigenvalues().size(); ++k) {
        if (std::abs(solver.eigenvalues()(k)) < std::abs(solver.eigenvalues()(best))) best = k;
    }
    const auto d = static_cast<Eigen::Index>(std::lround(std::sqrt(
        static_cast<double>(liouville.rows()))));
    Matrix rho = unvec(solver.eigenvectors().col(best), d);
    rho = 0.5 * (rho + rho.adjoint().eval());
    rho /= rho.trace().real();
    return rho;
}

std::vector<Complex> bloch_g1_expm(double rabi, double detuning, double gamma_sp,
                                   const std::vector<double>& tau) {
    const Matrix liou = bloch_liouvillian(rabi, detuning, gamma_sp);
    const Matrix rho_ss = liouvillian_steady_state(liou);
    const Matrix s = tls_sigma();

    Eigen::ComplexEigenSolver<Matrix> solver(liou);
    const Matrix v = solver.eigenvectors();
    const Eigen::VectorXcd coeffs = v.partialPivLu().solve(vec(s * rho_ss));

    std::vector<Complex> g1(tau.size());
    for (std::size_t k = 0; k < tau.size(); ++k) {
        Eigen::VectorXcd evolved = Eigen::VectorXcd::Zero(4);
        for (Eigen::Index m = 0; m < 4; ++m) {
            evolved += coeffs(m) * std::exp(solver.eigenvalues()(m) * tau[k]) * v.col(m);
        }
        g1[k] = (s.adjoint() * unvec(evolved, 2)).trace();
    }
    return g1;
}

double ibm_decoherence_exponent(double tau, const BathSpec& spec) {
    auto integrand = [&](double w) -> Complex {
        // (1 - cos w tau)/w^2 = 2 sin^2(w tau / 2)/w^2, stable near w = 0
        const double half = std::sin(0.5 * w * tau);
        const double geom = (w > 0.0) ? 2.0 * half * half / (w * w) : 0.5 * tau * tau;
        return thermal_weighted_density(w, spec) * geom;
    };
    const int panels = std::max(4, static_cast<int>(std::ceil(spec.omega_max() * tau / 3.0)));
    return integrate_adaptive(integrand, 0.0, spec.omega_max(), 1e-11, 1e-15, 4000, panels)
        .value.real();
}

PeakShape measure_peak(const std::vector<double>& domega, const std::vector<double>& values,
                       double center, double search_halfwidth) {
    PeakShape peak;
    std::size_t best = 0;
    bool found = false;
    for (std::size_t i = 0; i < domega.size(); ++i) {
        if (std::abs(domega[i] - center) > search_halfwidth) continue;
        if (!found || values[i] > values[best]) {
            best = i;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("measure_peak: search window outside grid");
    peak.position = domega[best];
    peak.height = values[best];

    const double half = 0.5 * peak.height;
    auto crossing = [&](int direction) {
        std::size_t i = best;
        while (true) {
            const std::size_t j = i + direction;
            if (j >= domega.size()) return domega[i];
            if (values[j] <= half) {
                const double frac = (values[i] - half) / (values[i] - values[j]);
                return domega[i] + frac * (domega[j] - domega[i]);
            }
            i = j;
        }
    };
    const double left = crossing(-1);
    const double right = crossing(+1);
    peak.hwhm = 0.5 * (right - left);
    return peak;
}

// --------------------------- the suite ---------------------------------------

namespace {

CheckResult check(const std::string& name, bool passed, const std::string& detail) {
    return {name, passed, detail};
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << v;
    return out.str();
}

void check_bloch(ValidationReport& report) {
    RunConfig cfg = preset("mollow-eta0");
    const SystemModel model = cfg.build_model();
    const CorrelationTables tables = cfg.build_tables(model);

    const Matrix rho_ss = steady_state(model, tables, SolverMode::Full, cfg.sim);
    const double n_ss = rho_ss(1, 1).real();
    const double rabi2 = cfg.rabi * cfg.rabi;
    const double closed_form = (rabi2 / 4.0) / (rabi2 / 2.0 + cfg.gamma * cfg.gamma / 4.0);
    report.checks.push_back(check("bloch-steady-population",
                                  std::abs(n_ss - closed_form) < 1e-6,
                                  "|n - closed form| = " + fmt(std::abs(n_ss - closed_form))));

    const Matrix rho_alg =
        liouvillian_steady_state(bloch_liouvillian(cfg.rabi, 0.0, cfg.gamma));
    report.checks.push_back(check("bloch-algebraic-null-space",
                                  max_abs(rho_ss - rho_alg) < 1e-9,
                                  "max deviation = " + fmt(max_abs(rho_ss - rho_alg))));

    SimConfig sim = cfg.sim;
    sim.tau_end = 800.0;
    const G1Trace trace = compute_g1(model, tables, SolverMode::Full, sim);
    const auto oracle = bloch_g1_expm(cfg.rabi, 0.0, cfg.gamma, trace.tau);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < trace.values.size(); ++i) {
        max_dev = std::max(max_dev, std::abs(trace.values[i] - oracle[i]));
    }
    report.checks.push_back(check("bloch-g1-matrix-exponential", max_dev < 1e-8,
                                  "max pointwise deviation = " + fmt(max_dev)));
}

void check_mollow(ValidationReport& report) {
    RunConfig cfg = preset("mollow-eta0");
    const SystemModel model = cfg.build_model();
    const CorrelationTables tables = cfg.build_tables(model);
    const G1Trace trace = compute_g1(model, tables, SolverMode::Full, cfg.sim);
    const Spectrum spec = spectrum(trace, 2.0, 2001);

    G1Trace oracle_trace = trace;
    oracle_trace.values = bloch_g1_expm(cfg.rabi, 0.0, cfg.gamma, trace.tau);
    Complex tail_mean = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < trace.tau.size(); ++i) {
        if (trace.tau[i] >= trace.tau.back() - 50.0) {
            tail_mean += oracle_trace.values[i];
            ++count;
        }
    }
    oracle_trace.g1_infinity = tail_mean / static_cast<double>(count);
    const Spectrum oracle_spec = spectrum(oracle_trace, 2.0, 2001);

    const double cell = spec.domega[1] - spec.domega[0];
    bool positions_ok = true;
    bool widths_ok = true;
    std::string detail;
    for (double center : {-cfg.rabi, 0.0, cfg.rabi}) {
        const PeakShape p = measure_peak(spec.domega, spec.values, center, 0.05);
        const PeakShape q = measure_peak(oracle_spec.domega, oracle_spec.values, center, 0.05);
        positions_ok = positions_ok && std::abs(p.position - center) <= cell + 1e-12;
        widths_ok = widths_ok && std::abs(p.hwhm - q.hwhm) <= 0.1 * q.hwhm;
        detail += " [" + fmt(center) + ": pos " + fmt(p.position) + ", hwhm " + fmt(p.hwhm) +
                  " vs " + fmt(q.hwhm) + "]";
    }
    report.checks.push_back(check("mollow-peak-positions", positions_ok, detail));
    report.checks.push_back(check("mollow-peak-widths", widths_ok, detail));
}

void check_ibm(ValidationReport& report) {
    RunConfig cfg = preset("paper-fig1");
    cfg.rabi = 0.0;
    cfg.gamma = 0.0;
    const SystemModel model = cfg.build_model();
    const CorrelationTables tables = cfg.build_tables(model);

    SimConfig sim = cfg.sim;
    sim.tau_end = 10.0;
    Matrix rho0 = Matrix::Zero(2, 2);
    rho0(1, 1) = 1.0; // excited state
    const G1Trace trace =
        compute_g1_anchored(rho0, 0.0, sim.tau_end, model, tables, SolverMode::Full, sim);

    double max_rel = 0.0;
    for (std::size_t i = 0; i < trace.tau.size(); ++i) {
        const double expected = std::exp(-ibm_decoherence_exponent(trace.tau[i], cfg.bath));
        max_rel = std::max(max_rel, std::abs(std::abs(trace.values[i]) - expected) / expected);
    }
    report.checks.push_back(check("ibm-decoherence-law", max_rel < 1e-4,
                                  "max relative deviation = " + fmt(max_rel)));
}

void check_sum_rule(ValidationReport& report) {
    for (const std::string& name : preset_names()) {
        RunConfig cfg = preset(name);
        const SystemModel model = cfg.build_model();
        const CorrelationTables tables = cfg.build_tables(model);
        const G1Trace trace = compute_g1(model, tables, cfg.mode, cfg.sim);
        const Spectrum spec = spectrum(trace, cfg.spectrum_omega_max, 4001);
        const double rel =
            std::abs(spec.sum_rule_integral - spec.sum_rule_target) /
            std::abs(spec.sum_rule_target);
        report.checks.push_back(check("sum-rule-" + name, rel < 0.02,
                                      "relative defect = " + fmt(rel)));
    }
}

void check_kernels(ValidationReport& report) {
    using namespace kernels;
    if (!avx2_available()) {
        report.checks.push_back(check("kernel-equivalence", true, "AVX2 unavailable, scalar only"));
        return;
    }
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::size_t n = 4097;
    std::vector<double> x(n), wc(n), ws(n);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = 1500.0 * unit(rng);
        wc[i] = unit(rng);
        ws[i] = unit(rng);
        wsum += std::abs(wc[i]) + std::abs(ws[i]);
    }
    double worst = 0.0;
    for (double a : {0.0, 0.013, 0.5, 2.2, 8.0}) {
        const CosSinSums ref = weighted_cos_sin_scalar(x.data(), wc.data(), ws.data(), n, a);
        const CosSinSums simd = weighted_cos_sin_avx2(x.data(), wc.data(), ws.data(), n, a);
        worst = std::max({worst, std::abs(ref.cos_sum - simd.cos_sum) / wsum,
                          std::abs(ref.sin_sum - simd.sin_sum) / wsum});
    }
    report.checks.push_back(check("kernel-equivalence", worst < 1e-14,
                                  "max scaled deviation = " + fmt(worst)));
}

} // namespace

ValidationReport run_validation_suite(std::ostream& log) {
    ValidationReport report;
    check_kernels(report);
    check_bloch(report);
    check_mollow(report);
    check_ibm(report);
    check_sum_rule(report);
    for (const auto& c : report.checks) {
        log << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    }
    return report;
}

} // namespace nmregress
