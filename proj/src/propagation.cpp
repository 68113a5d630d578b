#include "nmregress/propagation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace nmregress {

void SimConfig::validate() const {
    if (!(rk_tol > 0.0) || !(h_init > 0.0) || !(h_min > 0.0) || !(h_max > 0.0)) {
        throw config_error("solver: step-control parameters must be positive");
    }
    if (!(tau_dense_step > 0.0) || !(tau_sparse_step > 0.0) || !(wit_dense_step > 0.0) ||
        !(wit_sparse_step > 0.0)) {
        throw config_error("solver: grid steps must be positive");
    }
    if (!(ss_eps > 0.0) || !(ss_window > 0.0) || !(ss_t_max > 0.0)) {
        throw config_error("solver: steady-state parameters must be positive");
    }
}

std::vector<double> two_segment_grid(double dense_end, double dense_step, double sparse_step,
                                     double end) {
    if (!(dense_step > 0.0) || !(sparse_step > 0.0) || !(end > 0.0)) {
        throw std::invalid_argument("two_segment_grid: steps and end must be positive");
    }
    std::vector<double> grid;
    const double dense_stop = std::min(dense_end, end);
    const auto n_dense = static_cast<std::size_t>(std::floor(dense_stop / dense_step + 1e-9));
    for (std::size_t i = 0; i <= n_dense; ++i) grid.push_back(static_cast<double>(i) * dense_step);
    if (grid.back() < dense_stop - 1e-12) grid.push_back(dense_stop);
    double t = grid.back();
    while (t + sparse_step < end + 1e-12) {
        t += sparse_step;
        grid.push_back(t);
    }
    if (grid.back() < end - 1e-12) grid.push_back(end);
    return grid;
}

namespace {

Matrix rk4_step(const Matrix& x, double t, double h, const MatrixRhs& rhs, std::size_t& evals) {
    const Matrix k1 = rhs(x, t);
    const Matrix k2 = rhs(x + 0.5 * h * k1, t + 0.5 * h);
    const Matrix k3 = rhs(x + 0.5 * h * k2, t + 0.5 * h);
    const Matrix k4 = rhs(x + h * k3, t + h);
    evals += 4;
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Advance from t to t_target, adapting the substep with step doubling.
void advance(Matrix& x, double& t, double t_target, double& h, const MatrixRhs& rhs,
             const SimConfig& cfg, std::size_t& evals) {
    while (t < t_target - 1e-13) {
        if (cfg.fixed_step) {
            const double h_used = std::min(cfg.fixed_h, t_target - t);
            x = rk4_step(x, t, h_used, rhs, evals);
            t += h_used;
            continue;
        }
        double h_try = std::min({h, cfg.h_max, t_target - t});
        for (;;) {
            if (h_try < cfg.h_min) {
                std::ostringstream msg;
                msg << "propagate_matrix: step underflow at t = " << t << " (h = " << h_try << ")";
                throw numerical_error(msg.str());
            }
            const Matrix big = rk4_step(x, t, h_try, rhs, evals);
            Matrix half = rk4_step(x, t, 0.5 * h_try, rhs, evals);
            half = rk4_step(half, t + 0.5 * h_try, 0.5 * h_try, rhs, evals);
            const double err = max_abs(half - big) / 15.0;
            if (err <= cfg.rk_tol) {
                x = half;
                t += h_try;
                const double grow = (err > 0.0)
                                        ? 0.9 * std::pow(cfg.rk_tol / err, 0.2)
                                        : 2.0;
                h = std::clamp(h_try * std::min(2.0, grow), cfg.h_min, cfg.h_max);
                break;
            }
            h_try *= std::max(0.1, 0.9 * std::pow(cfg.rk_tol / err, 0.25));
        }
    }
    t = t_target;
}

double min_eigenvalue_of(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho + rho.adjoint().eval()));
    return solver.eigenvalues().minCoeff();
}

} // namespace

Trajectory propagate_matrix(const Matrix& x0, std::span<const double> grid, const MatrixRhs& rhs,
                            const SimConfig& cfg) {
    cfg.validate();
    if (grid.empty()) throw std::invalid_argument("propagate_matrix: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("propagate_matrix: grid must be strictly increasing");
        }
    }
    Trajectory traj;
    traj.grid.assign(grid.begin(), grid.end());
    traj.states.reserve(grid.size());
    traj.states.push_back(x0);

    Matrix x = x0;
    double t = grid[0];
    double h = cfg.h_init;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        advance(x, t, grid[i], h, rhs, cfg, traj.rhs_evaluations);
        traj.states.push_back(x);
    }
    return traj;
}

Trajectory integrate_physical(const Matrix& rho0, std::span<const double> grid,
                              const SystemModel& model, const CorrelationTables& tables,
                              SolverMode mode, const SimConfig& cfg) {
    require_hermitian(rho0, "integrate_physical.rho0", 1e-9);
    if (std::abs(rho0.trace() - Complex(1.0)) > 1e-9) {
        throw std::invalid_argument("integrate_physical: rho0 must have unit trace");
    }
    auto rhs = [&](const Matrix& rho, double t) {
        return rhs_physical(rho, t, model, tables, mode);
    };
    Trajectory traj = propagate_matrix(rho0, grid, rhs, cfg);
    traj.mode = mode;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const Matrix& rho = traj.states[i];
        const double trace_defect = std::abs(rho.trace() - Complex(1.0));
        const double herm_defect = hermiticity_defect(rho);
        traj.max_trace_defect = std::max(traj.max_trace_defect, trace_defect);
        traj.max_herm_defect = std::max(traj.max_herm_defect, herm_defect);
        traj.min_eigenvalue = std::min(traj.min_eigenvalue, min_eigenvalue_of(rho));
        if (trace_defect > 10.0 * cfg.invariant_tol || herm_defect > 10.0 * cfg.invariant_tol) {
            std::ostringstream msg;
            msg << "integrate_physical: invariant breach at t = " << traj.grid[i]
                << " (trace defect " << trace_defect << ", hermiticity defect " << herm_defect
                << ")";
            throw numerical_error(msg.str());
        }
    }
    return traj;
}

Trajectory integrate_physical(const Matrix& rho0, double t_end, const SystemModel& model,
                              const CorrelationTables& tables, SolverMode mode,
                              const SimConfig& cfg) {
    std::vector<double> grid;
    const double step = 1.0;
    for (double t = 0.0; t < t_end + 1e-12; t += step) grid.push_back(std::min(t, t_end));
    if (grid.back() < t_end) grid.push_back(t_end);
    return integrate_physical(rho0, grid, model, tables, mode, cfg);
}

Matrix steady_state(const SystemModel& model, const CorrelationTables& tables, SolverMode mode,
                    const SimConfig& cfg) {
    cfg.validate();
    bool decay_present = false;
    for (const auto& ch : model.lindblad) decay_present |= ch.rate > 0.0;
    decay_present |= tables.frequencies().size() > 0 &&
                     std::abs(tables.gamma_infinity(tables.frequencies().front())) > 0.0;
    if (!decay_present) {
        throw numerical_error("steady_state: no decay channel present, state cannot relax");
    }

    auto rhs = [&](const Matrix& rho, double t) {
        return rhs_physical(rho, t, model, tables, mode);
    };
    const int window_slots = static_cast<int>(std::ceil(cfg.ss_window / cfg.ss_check_dt));

    Matrix rho = Matrix::Zero(model.dim, model.dim);
    rho(0, 0) = 1.0;
    double t = 0.0;
    double h = cfg.h_init;
    std::deque<Matrix> history{rho};
    std::size_t evals = 0;

    while (t < cfg.ss_t_max) {
        advance(rho, t, t + cfg.ss_check_dt, h, rhs, cfg, evals);
        history.push_back(rho);
        if (static_cast<int>(history.size()) > window_slots + 1) history.pop_front();
        if (static_cast<int>(history.size()) == window_slots + 1) {
            double change = 0.0;
            for (const auto& past : history) change = std::max(change, max_abs(rho - past));
            if (change < cfg.ss_eps) break;
        }
    }
    if (t >= cfg.ss_t_max) {
        throw numerical_error("steady_state: not converged by t_max = " +
                              std::to_string(cfg.ss_t_max) + " ps");
    }

    // scrub roundoff, then verify stationarity under the saturated generator
    rho = 0.5 * (rho + rho.adjoint().eval());
    rho /= rho.trace().real();
    const double residual =
        max_abs(rhs_physical(rho, 0.0, model, tables, SolverMode::Markovian));
    if (residual > cfg.ss_rhs_tol) {
        throw numerical_error("steady_state: saturated-generator residual " +
                              std::to_string(residual) + " exceeds tolerance");
    }
    return rho;
}

Trajectory integrate_effective(const Matrix& rho_anchor, std::span<const double> tau_grid,
                               double t_anchor, const SystemModel& model,
                               const CorrelationTables& tables, SolverMode mode,
                               const SimConfig& cfg) {
    require_hermitian(rho_anchor, "integrate_effective.rho_anchor", 1e-9);
    const Matrix lam0 = model.emission_op * rho_anchor;
    auto rhs = [&](const Matrix& lam, double tau) {
        return rhs_effective(lam, rho_anchor, tau, t_anchor, model, tables, mode);
    };
    Trajectory traj = propagate_matrix(lam0, tau_grid, rhs, cfg);
    traj.mode = mode;
    const Complex trace0 = lam0.trace();
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const double defect = std::abs(traj.states[i].trace() - trace0);
        traj.max_trace_defect = std::max(traj.max_trace_defect, defect);
        if (defect > 10.0 * cfg.invariant_tol) {
            std::ostringstream msg;
            msg << "integrate_effective: trace drift " << defect << " at tau = " << traj.grid[i];
            throw numerical_error(msg.str());
        }
    }
    return traj;
}

Trajectory integrate_effective(const Matrix& rho_anchor, double tau_end, double t_anchor,
                               const SystemModel& model, const CorrelationTables& tables,
                               SolverMode mode, const SimConfig& cfg) {
    const auto grid = two_segment_grid(cfg.tau_dense_end, cfg.tau_dense_step, cfg.tau_sparse_step,
                                       tau_end);
    return integrate_effective(rho_anchor, grid, t_anchor, model, tables, mode, cfg);
}

} // namespace nmregress
