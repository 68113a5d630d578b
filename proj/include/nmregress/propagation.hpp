// propagation.hpp — Time integration of the physical state and the effective
// operator, plus steady-state detection. Classic RK4 with step-doubling error
// control; the generators are non-stiff at the target parameters.

#pragma once

#include "nmregress/generators.hpp"
#include "nmregress/types.hpp"

#include <functional>
#include <span>
#include <vector>

namespace nmregress {

struct SimConfig {
    // step control
    double rk_tol = 1e-10;   // max-entry local error per step
    double h_init = 1e-3;    // ps
    double h_min = 1e-9;
    double h_max = 5.0;
    bool fixed_step = false; // disable adaptivity (convergence studies)
    double fixed_h = 0.01;

    // steady-state detection
    double ss_window = 50.0;     // ps
    double ss_eps = 1e-12;       // max-entry change over the window
    double ss_t_max = 8000.0;    // ps
    double ss_check_dt = 10.0;   // ps between checkpoints
    double ss_rhs_tol = 1e-10;   // residual of the saturated generator

    // tau output grid for g1 runs
    double tau_dense_end = 25.0;
    double tau_dense_step = 0.01;
    double tau_sparse_step = 0.25;
    double tau_end = 3000.0;

    // t output grid for witness runs
    double wit_dense_end = 5.0;
    double wit_dense_step = 0.005;
    double wit_sparse_step = 0.02;

    // invariant monitoring (10x breach aborts)
    double invariant_tol = 1e-10;

    void validate() const;
};

// [0, dense_end] at dense_step then (dense_end, end] at sparse_step.
std::vector<double> two_segment_grid(double dense_end, double dense_step, double sparse_step,
                                     double end);

struct Trajectory {
    std::vector<double> grid;   // ps
    std::vector<Matrix> states; // aligned with grid
    SolverMode mode = SolverMode::Markovian;

    // monitoring, filled by the integrators
    double max_trace_defect = 0.0; // physical: |Tr-1|; effective: |Tr - Tr0|
    double max_herm_defect = 0.0;  // physical runs only
    double min_eigenvalue = 1.0;   // physical runs only
    std::size_t rhs_evaluations = 0;
};

using MatrixRhs = std::function<Matrix(const Matrix&, double)>;

// Generic driver: integrates dx/dt = rhs(x, t) recording x at every grid
// point (grid[0] is the initial time). Throws numerical_error on step
// underflow.
Trajectory propagate_matrix(const Matrix& x0, std::span<const double> grid, const MatrixRhs& rhs,
                            const SimConfig& cfg);

Trajectory integrate_physical(const Matrix& rho0, std::span<const double> grid,
                              const SystemModel& model, const CorrelationTables& tables,
                              SolverMode mode, const SimConfig& cfg);
Trajectory integrate_physical(const Matrix& rho0, double t_end, const SystemModel& model,
                              const CorrelationTables& tables, SolverMode mode,
                              const SimConfig& cfg);

// Long-time integration until the state stops changing over a trailing
// window, then a residual check against the saturated generator.
Matrix steady_state(const SystemModel& model, const CorrelationTables& tables, SolverMode mode,
                    const SimConfig& cfg);

// Effective-operator propagation: Lambda(t, 0) = emission_op * rho_anchor,
// d/dtau Lambda = rhs_effective(...). t_anchor may be kInfiniteTime.
Trajectory integrate_effective(const Matrix& rho_anchor, std::span<const double> tau_grid,
                               double t_anchor, const SystemModel& model,
                               const CorrelationTables& tables, SolverMode mode,
                               const SimConfig& cfg);
Trajectory integrate_effective(const Matrix& rho_anchor, double tau_end, double t_anchor,
                               const SystemModel& model, const CorrelationTables& tables,
                               SolverMode mode, const SimConfig& cfg);

} // namespace nmregress
