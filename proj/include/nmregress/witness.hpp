// witness.hpp — Trace-distance non-Markovianity witness: evolve the state
// pair (1 ± sigma_y)/2 under the physical equation of motion and detect
// intervals of growing distance (information backflow).

#pragma once

#include "nmregress/propagation.hpp"
#include "nmregress/types.hpp"

#include <utility>
#include <vector>

namespace nmregress {

struct WitnessTrace {
    std::vector<double> t;          // ps
    std::vector<double> distance;   // in [0, 1]
    std::vector<double> derivative; // centered finite differences, ps^-1
    std::vector<std::pair<double, double>> positive_intervals;
};

WitnessTrace witness_trace(const SystemModel& model, const CorrelationTables& tables,
                           SolverMode mode, double t_end, const SimConfig& cfg,
                           double derivative_threshold = 1e-8);

} // namespace nmregress
