// nmregress — correlation functions, emission spectra, and a trace-distance
// non-Markovianity witness for a driven two-level emitter in a phonon bath.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 validation-suite failure.

#include "nmregress/config.hpp"
#include "nmregress/csv.hpp"
#include "nmregress/kernels.hpp"
#include "nmregress/run.hpp"
#include "nmregress/validate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct CommonOptions {
    std::string preset_name;
    std::string config_path;
    std::string mode;
    std::string out_dir;
    std::string prefix;
    std::string kernel = "auto";
    std::vector<std::string> overrides;
    bool echo = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--preset", opts.preset_name, "named preset (paper-fig1, mollow-eta0)");
    cmd->add_option("--config", opts.config_path, "key-value config file");
    cmd->add_option("--mode", opts.mode, "solver mode: markovian|naive|full");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--prefix", opts.prefix, "output file prefix");
    cmd->add_option("--set", opts.overrides, "override a config key, e.g. --set bath.eta_ps2=0.01")
        ->type_name("KEY=VALUE");
    cmd->add_option("--kernel", opts.kernel, "force reduction kernel: auto|scalar|avx2");
    cmd->add_flag("--echo", opts.echo, "print the resolved configuration");
}

nmregress::RunConfig resolve_config(const CommonOptions& opts) {
    using nmregress::RunConfig;
    std::optional<RunConfig> base;
    if (!opts.preset_name.empty()) base = nmregress::preset(opts.preset_name);
    RunConfig cfg;
    if (!opts.config_path.empty()) {
        cfg = nmregress::load_config_file(opts.config_path, base);
    } else if (base.has_value()) {
        cfg = *base;
    } else {
        throw nmregress::config_error(
            "no configuration given: pass --preset and/or --config (required keys: "
            "system.rabi_ps_inv, system.detuning_ps_inv, system.gamma_ps_inv, bath.eta_ps2, "
            "bath.omega_c_ps_inv, bath.temperature_K, solver.mode)");
    }
    for (const auto& item : opts.overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw nmregress::config_error("--set expects KEY=VALUE, got '" + item + "'");
        }
        nmregress::apply_override(cfg, item.substr(0, eq), item.substr(eq + 1));
    }
    if (!opts.mode.empty()) cfg.mode = nmregress::parse_mode(opts.mode);
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (!opts.prefix.empty()) cfg.prefix = opts.prefix;
    cfg.validate();

    if (opts.kernel == "scalar") {
        nmregress::kernels::select_impl(nmregress::kernels::Impl::Scalar);
    } else if (opts.kernel == "avx2") {
        nmregress::kernels::select_impl(nmregress::kernels::Impl::Avx2);
    } else if (opts.kernel != "auto") {
        throw nmregress::config_error("--kernel expects auto|scalar|avx2");
    }

    if (opts.echo) {
        for (const auto& [key, value] : cfg.echo()) {
            std::cout << key << " = " << value << "\n";
        }
    }
    return cfg;
}

void report_error(const std::string& kind, const std::string& what, int code) {
    nlohmann::json record = {{"error", {{"kind", kind}, {"message", what}, {"exit_code", code}}}};
    std::cerr << record.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-time correlation functions and emission spectra for a driven "
                 "two-level emitter coupled to a phonon bath"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string which;
    for (const char* name : {"g1", "spectrum", "witness", "sweep", "validate"}) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common(cmd, opts);
        cmd->callback([&which, name]() { which = name; });
    }
    app.get_subcommand("g1")->description("first-order correlation function g1(tau)");
    app.get_subcommand("spectrum")->description("incoherent emission spectrum and sideband power");
    app.get_subcommand("witness")->description("trace-distance non-Markovianity witness");
    app.get_subcommand("sweep")->description("run a declared parameter sweep concurrently");
    app.get_subcommand("validate")->description("run the built-in oracle suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (which == "validate") {
            if (!opts.kernel.empty() && opts.kernel != "auto") {
                nmregress::kernels::select_impl(opts.kernel == "scalar"
                                                    ? nmregress::kernels::Impl::Scalar
                                                    : nmregress::kernels::Impl::Avx2);
            }
            const auto report = nmregress::run_validation_suite(std::cout);
            if (!report.all_passed()) {
                report_error("validation", "validation suite reported failures", 4);
                return 4;
            }
            return 0;
        }

        const nmregress::RunConfig cfg = resolve_config(opts);
        nmregress::RunOutput out;
        if (which == "g1") {
            out = nmregress::run_g1(cfg, std::cerr);
        } else if (which == "spectrum") {
            out = nmregress::run_spectrum(cfg, std::cerr);
        } else if (which == "witness") {
            out = nmregress::run_witness(cfg, std::cerr);
        } else if (which == "sweep") {
            out = nmregress::run_sweep(cfg, std::cerr);
        }
        for (const auto& file : out.files) std::cout << file << "\n";
        return 0;
    } catch (const nmregress::config_error& err) {
        report_error("config", err.what(), 2);
        return 2;
    } catch (const std::exception& err) {
        report_error("numerical", err.what(), 3);
        return 3;
    }
}
