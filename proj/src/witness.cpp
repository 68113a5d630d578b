#include "nmregress/witness.hpp"

#include "nmregress/operators.hpp"

#include <stdexcept>

namespace nmregress {

WitnessTrace witness_trace(const SystemModel& model, const CorrelationTables& tables,
                           SolverMode mode, double t_end, const SimConfig& cfg,
                           double derivative_threshold) {
    if (model.dim != 2) {
        throw std::invalid_argument("witness_trace: defined for the two-level preset");
    }
    if (!(t_end >= 5.0)) {
        throw std::invalid_argument("witness_trace: t_end must cover the backflow window (>= 5 ps)");
    }

    const auto grid =
        two_segment_grid(cfg.wit_dense_end, cfg.wit_dense_step, cfg.wit_sparse_step, t_end);
    const Matrix rho_plus = 0.5 * (identity_op(2) + sigma_y());
    const Matrix rho_minus = 0.5 * (identity_op(2) - sigma_y());

    const Trajectory plus = integrate_physical(rho_plus, grid, model, tables, mode, cfg);
    const Trajectory minus = integrate_physical(rho_minus, grid, model, tables, mode, cfg);

    WitnessTrace out;
    out.t = grid;
    out.distance.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.distance[i] = trace_distance(plus.states[i], minus.states[i]);
    }

    const std::size_t n = grid.size();
    out.derivative.resize(n);
    out.derivative[0] = (out.distance[1] - out.distance[0]) / (grid[1] - grid[0]);
    out.derivative[n - 1] =
        (out.distance[n - 1] - out.distance[n - 2]) / (grid[n - 1] - grid[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out.derivative[i] = (out.distance[i + 1] - out.distance[i - 1]) /
                            (grid[i + 1] - grid[i - 1]);
    }

    bool open = false;
    double start = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool positive = out.derivative[i] > derivative_threshold;
        if (positive && !open) {
            open = true;
            start = grid[i];
        } else if (!positive && open) {
            open = false;
            out.positive_intervals.emplace_back(start, grid[i - 1]);
        }
    }
    if (open) out.positive_intervals.emplace_back(start, grid.back());
    return out;
}

} // namespace nmregress
