#include "nmregress/run.hpp"

#include "nmregress/csv.hpp"
#include "nmregress/observables.hpp"
#include "nmregress/witness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <sstream>
#include <thread>

namespace nmregress {

namespace {

std::string out_path(const RunConfig& cfg, const std::string& stem) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / (cfg.prefix + "_" + stem)).string();
}

std::vector<std::pair<std::string, std::string>> g1_summary_rows(const G1Trace& trace) {
    return {
        {"mode", mode_name(trace.mode)},
        {"g1_0_re", format_g17(trace.values.front().real())},
        {"g1_0_im", format_g17(trace.values.front().imag())},
        {"g1_infinity_re", format_g17(trace.g1_infinity.real())},
        {"g1_infinity_im", format_g17(trace.g1_infinity.imag())},
        {"plateau_reached", trace.plateau_reached ? "1" : "0"},
        {"plateau_residual", format_g17(trace.plateau_residual)},
        {"max_trace_defect", format_g17(trace.max_trace_defect)},
    };
}

void write_g1_files(const RunConfig& cfg, const G1Trace& trace, RunOutput& out) {
    std::vector<double> re(trace.values.size()), im(trace.values.size());
    for (std::size_t i = 0; i < trace.values.size(); ++i) {
        re[i] = trace.values[i].real();
        im[i] = trace.values[i].imag();
    }
    const std::string csv = out_path(cfg, "g1.csv");
    write_csv(csv, {{"tau_ps", trace.tau}, {"re_g1", re}, {"im_g1", im}});
    out.files.push_back(csv);
    const std::string summary = out_path(cfg, "g1_summary.csv");
    write_summary(summary, g1_summary_rows(trace));
    out.files.push_back(summary);
}

G1Trace pipeline_g1(const RunConfig& cfg, std::ostream& log) {
    const SystemModel model = cfg.build_model();
    const CorrelationTables tables = cfg.build_tables(model);
    const G1Trace trace = compute_g1(model, tables, cfg.mode, cfg.sim);
    if (!trace.plateau_reached) {
        log << "warning: g1 plateau not reached by tau_end = " << cfg.sim.tau_end
            << " ps (residual " << trace.plateau_residual << "); extend solver.tau_end_ps\n";
    }
    return trace;
}

} // namespace

RunOutput run_g1(const RunConfig& cfg, std::ostream& log) {
    RunOutput out;
    write_g1_files(cfg, pipeline_g1(cfg, log), out);
    return out;
}

RunOutput run_spectrum(const RunConfig& cfg, std::ostream& log) {
    if (cfg.bath.eta > 0.0 && cfg.spectrum_omega_max < 3.0 * cfg.bath.omega_c) {
        log << "warning: spectrum_omega_max below 3*omega_c; sideband support may be clipped\n";
    }
    RunOutput out;
    const G1Trace trace = pipeline_g1(cfg, log);
    write_g1_files(cfg, trace, out);

    const Spectrum spec = spectrum(trace, cfg.spectrum_omega_max, cfg.spectrum_points);
    if (spec.negativity_warning) {
        log << "warning: spectrum takes values below -1% of its peak (reported as-is)\n";
    }
    const std::string csv = out_path(cfg, "spectrum.csv");
    write_csv(csv, {{"domega_ps_inv", spec.domega}, {"s_value", spec.values}});
    out.files.push_back(csv);

    const double fraction = sideband_fraction(spec, cfg.sideband_window);
    const double asymmetry = sideband_asymmetry(spec, cfg.sideband_window);
    auto rows = g1_summary_rows(trace);
    rows.emplace_back("sideband_window_ps_inv", format_g17(cfg.sideband_window));
    rows.emplace_back("sideband_fraction", format_g17(fraction));
    rows.emplace_back("sideband_asymmetry", format_g17(asymmetry));
    rows.emplace_back("sum_rule_integral", format_g17(spec.sum_rule_integral));
    rows.emplace_back("sum_rule_target", format_g17(spec.sum_rule_target));
    rows.emplace_back("negativity_warning", spec.negativity_warning ? "1" : "0");
    const std::string summary = out_path(cfg, "spectrum_summary.csv");
    write_summary(summary, rows);
    out.files.push_back(summary);
    return out;
}

RunOutput run_witness(const RunConfig& cfg, std::ostream& log) {
    (void)log;
    const SystemModel model = cfg.build_model();
    const CorrelationTables tables = cfg.build_tables(model);
    const WitnessTrace trace = witness_trace(model, tables, cfg.mode, cfg.witness_t_end, cfg.sim,
                                             cfg.witness_threshold);
    RunOutput out;
    const std::string csv = out_path(cfg, "witness.csv");
    write_csv(csv, {{"t_ps", trace.t},
                    {"trace_distance", trace.distance},
                    {"derivative_ps_inv", trace.derivative}});
    out.files.push_back(csv);

    std::vector<std::pair<std::string, std::string>> rows = {
        {"mode", mode_name(cfg.mode)},
        {"distance_t0", format_g17(trace.distance.front())},
        {"derivative_threshold_ps_inv", format_g17(cfg.witness_threshold)},
        {"positive_interval_count", std::to_string(trace.positive_intervals.size())},
    };
    for (std::size_t k = 0; k < trace.positive_intervals.size(); ++k) {
        rows.emplace_back("positive_interval_" + std::to_string(k) + "_start_ps",
                          format_g17(trace.positive_intervals[k].first));
        rows.emplace_back("positive_interval_" + std::to_string(k) + "_end_ps",
                          format_g17(trace.positive_intervals[k].second));
    }
    const std::string summary = out_path(cfg, "witness_summary.csv");
    write_summary(summary, rows);
    out.files.push_back(summary);
    return out;
}

namespace {

unsigned sweep_worker_cap() {
    unsigned cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NM_REGRESS_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) cap = static_cast<unsigned>(parsed);
    }
    return cap;
}

} // namespace

RunOutput run_sweep(const RunConfig& cfg, std::ostream& log) {
    if (cfg.sweep_parameter.empty() || cfg.sweep_values.empty()) {
        throw config_error("sweep: declare sweep.parameter and sweep.values");
    }

    // Per-point configs, each with its own prefix.
    std::vector<RunConfig> points;
    for (std::size_t k = 0; k < cfg.sweep_values.size(); ++k) {
        RunConfig point = cfg;
        point.sweep_parameter.clear();
        point.sweep_values.clear();
        apply_override(point, cfg.sweep_parameter, format_g17(cfg.sweep_values[k]));
        char tag[16];
        std::snprintf(tag, sizeof(tag), "p%03zu", k);
        point.prefix = cfg.prefix + "_" + tag;
        point.validate();
        points.push_back(std::move(point));
    }

    // Simulations run concurrently; all file writing happens afterwards on
    // this thread, so output is independent of the worker count.
    struct PointResult {
        G1Trace g1;
        bool has_g1 = false;
        WitnessTrace witness;
        bool has_witness = false;
        std::string log_text;
    };
    std::vector<PointResult> results(points.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(points.size());

    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= points.size()) return;
            try {
                std::ostringstream plog;
                if (cfg.sweep_target == "witness") {
                    const SystemModel model = points[k].build_model();
                    const CorrelationTables tables = points[k].build_tables(model);
                    results[k].witness =
                        witness_trace(model, tables, points[k].mode, points[k].witness_t_end,
                                      points[k].sim, points[k].witness_threshold);
                    results[k].has_witness = true;
                } else {
                    results[k].g1 = pipeline_g1(points[k], plog);
                    results[k].has_g1 = true;
                }
                results[k].log_text = plog.str();
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };

    const unsigned n_workers =
        std::min<unsigned>(sweep_worker_cap(), static_cast<unsigned>(points.size()));
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < n_workers; ++w) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    RunOutput out;
    std::vector<double> indices(points.size()), values(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        indices[k] = static_cast<double>(k);
        values[k] = cfg.sweep_values[k];
        log << results[k].log_text;
        if (results[k].has_witness) {
            RunConfig file_cfg = points[k];
            const WitnessTrace& w = results[k].witness;
            const std::string csv = out_path(file_cfg, "witness.csv");
            write_csv(csv, {{"t_ps", w.t},
                            {"trace_distance", w.distance},
                            {"derivative_ps_inv", w.derivative}});
            out.files.push_back(csv);
            continue;
        }
        write_g1_files(points[k], results[k].g1, out);
        if (cfg.sweep_target == "spectrum") {
            const Spectrum spec =
                spectrum(results[k].g1, points[k].spectrum_omega_max, points[k].spectrum_points);
            const std::string csv = out_path(points[k], "spectrum.csv");
            write_csv(csv, {{"domega_ps_inv", spec.domega}, {"s_value", spec.values}});
            out.files.push_back(csv);
            write_summary(out_path(points[k], "spectrum_summary.csv"),
                          {{"sweep_value", format_g17(cfg.sweep_values[k])},
                           {"sideband_fraction",
                            format_g17(sideband_fraction(spec, points[k].sideband_window))},
                           {"sideband_asymmetry",
                            format_g17(sideband_asymmetry(spec, points[k].sideband_window))},
                           {"sum_rule_integral", format_g17(spec.sum_rule_integral)},
                           {"sum_rule_target", format_g17(spec.sum_rule_target)}});
            out.files.push_back(out_path(points[k], "spectrum_summary.csv"));
        }
    }
    const std::string manifest = out_path(cfg, "sweep_manifest.csv");
    write_csv(manifest, {{"index", indices}, {cfg.sweep_parameter, values}});
    out.files.push_back(manifest);
    return out;
}

} // namespace nmregress
