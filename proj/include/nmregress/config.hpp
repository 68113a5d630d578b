// config.hpp — Run configuration: key-value schema with flat sections,
// presets, validation, and canonical echo. All physical keys carry unit
// suffixes (ps-based units, kelvin for temperature).

#pragma once

#include "nmregress/bath.hpp"
#include "nmregress/generators.hpp"
#include "nmregress/propagation.hpp"
#include "nmregress/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nmregress {

struct RunConfig {
    // [system]
    double rabi = 0.0;          // rabi_ps_inv
    bool detuning_auto = false; // detuning_ps_inv = auto-polaron
    double detuning = 0.0;      // ps^-1 when not auto
    double gamma = 0.0;         // gamma_ps_inv

    // [bath]
    BathSpec bath;

    // [solver]
    SolverMode mode = SolverMode::Full;
    SimConfig sim;
    TableGrid table;
    int omega_panels = 128;

    // [output]
    std::string out_dir = ".";
    std::string prefix = "run";
    double spectrum_omega_max = 8.0; // ps^-1
    int spectrum_points = 16001;
    double sideband_window = 0.5;    // ps^-1
    double witness_t_end = 20.0;     // ps
    double witness_threshold = 1e-8; // ps^-1

    // [sweep]
    std::string sweep_parameter;
    std::vector<double> sweep_values;
    std::string sweep_target = "spectrum";

    double resolved_detuning() const; // auto-polaron -> polaron_shift(bath)
    SystemModel build_model() const;
    CorrelationTables build_tables(const SystemModel& model) const;
    void validate() const;

    // canonical dump of every setting, defaults filled in
    std::vector<std::pair<std::string, std::string>> echo() const;
};

// Named presets: "paper-fig1" (driven emitter with the phonon bath) and
// "mollow-eta0" (same emitter, bath coupling switched off).
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Parses the documented schema. With no base config, all physical keys are
// required; a preset base supplies them. Unknown keys are rejected.
RunConfig parse_config(const std::string& text, std::optional<RunConfig> base = std::nullopt);
RunConfig load_config_file(const std::string& path, std::optional<RunConfig> base = std::nullopt);

// Assigns one "section.key" (used by sweeps and command-line overrides).
void apply_override(RunConfig& cfg, const std::string& dotted_key, const std::string& value);

} // namespace nmregress
