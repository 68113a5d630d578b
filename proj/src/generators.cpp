#include "nmregress/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace nmregress {

SolverMode parse_mode(std::string_view name) {
    if (name == "markovian") return SolverMode::Markovian;
    if (name == "naive") return SolverMode::Naive;
    if (name == "full") return SolverMode::Full;
    throw config_error("unknown solver mode '" + std::string(name) +
                       "' (expected markovian|naive|full)");
}

const char* mode_name(SolverMode mode) {
    switch (mode) {
        case SolverMode::Markovian: return "markovian";
        case SolverMode::Naive: return "naive";
        case SolverMode::Full: return "full";
    }
    return "?";
}

void SystemModel::finalize() {
    require_hermitian(h_s, "SystemModel.h_s", 1e-12);
    require_hermitian(coupling, "SystemModel.coupling", 1e-12);
    require_square(emission_op, "SystemModel.emission_op");
    dim = static_cast<int>(h_s.rows());
    require_same_dim(h_s, coupling, "SystemModel");
    require_same_dim(h_s, emission_op, "SystemModel");
    for (const auto& ch : lindblad) {
        require_same_dim(h_s, ch.op, "SystemModel.lindblad");
        if (ch.rate < 0.0) throw config_error("SystemModel: Lindblad rate must be >= 0");
    }
    frame = eigendecompose(h_s);
    coupling_bohr = bohr_decompose(coupling, frame);
}

SystemModel qd_model(double rabi, double detuning, double gamma_sp) {
    SystemModel m;
    m.h_s = detuning * excited_projector() + 0.5 * rabi * (sigma_plus() + sigma_minus());
    m.coupling = excited_projector(); // sigma† sigma
    m.emission_op = sigma_minus();
    m.lindblad.push_back({sigma_minus(), gamma_sp});
    m.finalize();
    return m;
}

namespace {

// Theta(a, b) = sum_j Gamma(-w_j; a, b) A_j. For the saturated (Markovian)
// dissipator use (0, inf); for the inhomogeneous tail use (tau, inf).
Matrix theta_operator(const SystemModel& model, const CorrelationTables& tables, double a,
                      double b) {
    Matrix theta = Matrix::Zero(model.dim, model.dim);
    const bool to_infinity = std::isinf(b);
    for (const auto& term : model.coupling_bohr.terms) {
        Complex coef;
        if (to_infinity) {
            coef = tables.gamma_tail(-term.omega, a);
        } else {
            coef = tables.gamma_between(-term.omega, a, b);
        }
        theta += coef * term.op;
    }
    return theta;
}

// -[A, M (Theta x - x Theta†)]; pass insert = nullptr for M = identity
Matrix bath_contraction(const Matrix& x, const Matrix* insert, const Matrix& a_op,
                        const Matrix& theta) {
    Matrix y = theta * x - x * theta.adjoint();
    if (insert != nullptr) {
        y = (*insert) * y;
    }
    return -(a_op * y - y * a_op);
}

} // namespace

Matrix dissipator(const Matrix& x, double tau, const SystemModel& model,
                  const CorrelationTables& tables, SolverMode mode) {
    require_same_dim(x, model.coupling, "dissipator");
    if (tau < 0.0) throw std::invalid_argument("dissipator: tau must be >= 0");
    const double upper = (mode == SolverMode::Markovian) ? kInfiniteTime : tau;
    const Matrix theta = theta_operator(model, tables, 0.0, upper);
    return bath_contraction(x, nullptr, model.coupling, theta);
}

Matrix inhomogeneous(const Matrix& rho_frame, double tau, double t_anchor,
                     const SystemModel& model, const CorrelationTables& tables) {
    require_same_dim(rho_frame, model.coupling, "inhomogeneous");
    if (tau < 0.0) throw std::invalid_argument("inhomogeneous: tau must be >= 0");
    if (t_anchor < 0.0) throw std::invalid_argument("inhomogeneous: t must be >= 0");
    if (t_anchor == 0.0) {
        return Matrix::Zero(rho_frame.rows(), rho_frame.cols());
    }
    const double upper = std::isinf(t_anchor) ? kInfiniteTime : tau + t_anchor;
    const Matrix theta = theta_operator(model, tables, tau, upper);
    const Matrix b_rotated = frame_rotate(model.emission_op, model.frame, tau);
    return bath_contraction(rho_frame, &b_rotated, model.coupling, theta);
}

Matrix lindblad_term(const Matrix& x, const SystemModel& model) {
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    for (const auto& ch : model.lindblad) {
        const Matrix ldag_l = ch.op.adjoint() * ch.op;
        out += ch.rate * (ch.op * x * ch.op.adjoint() -
                          0.5 * (ldag_l * x + x * ldag_l));
    }
    return out;
}

Matrix rhs_physical(const Matrix& rho, double t, const SystemModel& model,
                    const CorrelationTables& tables, SolverMode mode) {
    const Complex i_unit(0.0, 1.0);
    Matrix out = -i_unit * (model.h_s * rho - rho * model.h_s);
    out += dissipator(rho, t, model, tables, mode);
    out += lindblad_term(rho, model);
    return out;
}

Matrix rhs_effective(const Matrix& lam, const Matrix& rho_anchor, double tau, double t_anchor,
                     const SystemModel& model, const CorrelationTables& tables, SolverMode mode) {
    const Complex i_unit(0.0, 1.0);
    // i[Lambda, H_S] = -i[H_S, Lambda]
    Matrix out = i_unit * (lam * model.h_s - model.h_s * lam);
    out += dissipator(lam, tau, model, tables, mode);
    out += lindblad_term(lam, model);
    if (mode == SolverMode::Full && t_anchor > 0.0) {
        const Matrix rho_frame = frame_rotate(rho_anchor, model.frame, tau);
        out += inhomogeneous(rho_frame, tau, t_anchor, model, tables);
    }
    return out;
}

} // namespace nmregress
