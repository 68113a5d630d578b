// run.hpp — Subcommand drivers shared by the command-line tool and the
// acceptance suite. Each driver builds the model and tables from a RunConfig,
// runs the pipeline, and writes CSV artifacts into cfg.out_dir.

#pragma once

#include "nmregress/config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace nmregress {

struct RunOutput {
    std::vector<std::string> files;
};

RunOutput run_g1(const RunConfig& cfg, std::ostream& log);
RunOutput run_spectrum(const RunConfig& cfg, std::ostream& log);
RunOutput run_witness(const RunConfig& cfg, std::ostream& log);

// One output set per sweep value; simulations run concurrently (capped by
// NM_REGRESS_THREADS), files written by the calling thread.
RunOutput run_sweep(const RunConfig& cfg, std::ostream& log);

} // namespace nmregress
