#include "nmregress/config.hpp"

#include "nmregress/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace nmregress {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double parsed = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size()) {
        throw config_error("config: key '" + key + "' expects a decimal number, got '" + v + "'");
    }
    return parsed;
}

double parse_nonnegative(const std::string& key, const std::string& value) {
    const double parsed = parse_double(key, value);
    if (parsed < 0.0) {
        throw config_error("config: key '" + key + "' must be >= 0, got " + value);
    }
    return parsed;
}

int parse_int(const std::string& key, const std::string& value) {
    const double parsed = parse_double(key, value);
    const int as_int = static_cast<int>(parsed);
    if (parsed != static_cast<double>(as_int)) {
        throw config_error("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
    return as_int;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw config_error("config: key '" + key + "' expects a list of numbers");
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"system.rabi_ps_inv",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.rabi = parse_nonnegative(k, v);
         }},
        {"system.detuning_ps_inv",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             if (trim(v) == "auto-polaron") {
                 c.detuning_auto = true;
             } else {
                 c.detuning_auto = false;
                 c.detuning = parse_double(k, v);
             }
         }},
        {"system.gamma_ps_inv",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.gamma = parse_nonnegative(k, v);
         }},
        {"bath.eta_ps2",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.bath.eta = parse_nonnegative(k, v);
         }},
        {"bath.omega_c_ps_inv",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.bath.omega_c = parse_double(k, v);
         }},
        {"bath.temperature_K",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.bath.temperature = parse_nonnegative(k, v);
         }},
        {"solver.mode",
         [](RunConfig& c, const std::string&, const std::string& v) {
             c.mode = parse_mode(trim(v));
         }},
        {"solver.rk_tolerance",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.rk_tol = parse_nonnegative(k, v);
         }},
        {"solver.tau_dense_end_ps",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.tau_dense_end = parse_nonnegative(k, v);
         }},
        {"solver.tau_dense_step_ps",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.tau_dense_step = parse_nonnegative(k, v);
         }},
        {"solver.tau_sparse_step_ps",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.tau_sparse_step = parse_nonnegative(k, v);
         }},
        {"solver.tau_end_ps",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.tau_end = parse_nonnegative(k, v);
         }},
        {"solver.s_max_ps",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.table.s_max = parse_nonnegative(k, v);
         }},
        {"solver.s_step_ps",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.table.step = parse_nonnegative(k, v);
         }},
        {"solver.omega_panels",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.omega_panels = parse_int(k, v);
         }},
        {"solver.steady_t_max_ps",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.ss_t_max = parse_nonnegative(k, v);
         }},
        {"output.directory",
         [](RunConfig& c, const std::string&, const std::string& v) { c.out_dir = trim(v); }},
        {"output.prefix",
         [](RunConfig& c, const std::string&, const std::string& v) { c.prefix = trim(v); }},
        {"output.spectrum_omega_max_ps_inv",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.spectrum_omega_max = parse_nonnegative(k, v);
         }},
        {"output.spectrum_points",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.spectrum_points = parse_int(k, v);
         }},
        {"output.sideband_window_ps_inv",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sideband_window = parse_nonnegative(k, v);
         }},
        {"output.witness_t_end_ps",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.witness_t_end = parse_nonnegative(k, v);
         }},
        {"output.witness_threshold_ps_inv",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.witness_threshold = parse_nonnegative(k, v);
         }},
        {"sweep.parameter",
         [](RunConfig& c, const std::string&, const std::string& v) {
             c.sweep_parameter = trim(v);
         }},
        {"sweep.values",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sweep_values = parse_double_list(k, v);
         }},
        {"sweep.target",
         [](RunConfig& c, const std::string&, const std::string& v) {
             const std::string t = trim(v);
             if (t != "g1" && t != "spectrum" && t != "witness") {
                 throw config_error("config: sweep.target must be g1|spectrum|witness");
             }
             c.sweep_target = t;
         }},
    };
    return table;
}

const std::vector<std::string>& required_keys() {
    static const std::vector<std::string> keys = {
        "system.rabi_ps_inv", "system.detuning_ps_inv", "system.gamma_ps_inv",
        "bath.eta_ps2",       "bath.omega_c_ps_inv",    "bath.temperature_K",
        "solver.mode",
    };
    return keys;
}

void reject_unknown(const std::string& dotted) {
    // point at a likely unit-suffix mistake when the stem matches a known key
    const std::size_t dot = dotted.find('.');
    const std::string section = dotted.substr(0, dot + 1);
    const std::string stem_in = dotted.substr(dot + 1);
    for (const auto& [known, setter] : setters()) {
        if (known.rfind(section, 0) != 0) continue;
        const std::string known_stem = known.substr(section.size());
        const std::string head = known_stem.substr(0, known_stem.find('_'));
        if (!head.empty() && stem_in.rfind(head, 0) == 0 && known != dotted) {
            throw config_error("config: unknown key '" + dotted + "' (unit-suffix mismatch? expected '" +
                               known + "')");
        }
    }
    throw config_error("config: unknown key '" + dotted + "'");
}

} // namespace

double RunConfig::resolved_detuning() const {
    return detuning_auto ? polaron_shift(bath) : detuning;
}

SystemModel RunConfig::build_model() const {
    return qd_model(rabi, resolved_detuning(), gamma);
}

CorrelationTables RunConfig::build_tables(const SystemModel& model) const {
    return CorrelationTables::build(bath, model.bohr_frequencies(), table, omega_panels);
}

void RunConfig::validate() const {
    bath.validate();
    sim.validate();
    if (rabi < 0.0 || gamma < 0.0) throw config_error("config: negative physical parameter");
    if (spectrum_points < 3) throw config_error("config: spectrum_points must be >= 3");
    if (!(spectrum_omega_max > 0.0)) throw config_error("config: spectrum_omega_max must be > 0");
    if (!sweep_parameter.empty() && sweep_values.empty()) {
        throw config_error("config: sweep.parameter declared without sweep.values");
    }
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("system.rabi_ps_inv", format_g17(rabi));
    rows.emplace_back("system.detuning_ps_inv",
                      detuning_auto ? "auto-polaron" : format_g17(detuning));
    rows.emplace_back("system.resolved_detuning_ps_inv", format_g17(resolved_detuning()));
    rows.emplace_back("system.gamma_ps_inv", format_g17(gamma));
    rows.emplace_back("bath.eta_ps2", format_g17(bath.eta));
    rows.emplace_back("bath.omega_c_ps_inv", format_g17(bath.omega_c));
    rows.emplace_back("bath.temperature_K", format_g17(bath.temperature));
    rows.emplace_back("solver.mode", mode_name(mode));
    rows.emplace_back("solver.rk_tolerance", format_g17(sim.rk_tol));
    rows.emplace_back("solver.tau_dense_end_ps", format_g17(sim.tau_dense_end));
    rows.emplace_back("solver.tau_dense_step_ps", format_g17(sim.tau_dense_step));
    rows.emplace_back("solver.tau_sparse_step_ps", format_g17(sim.tau_sparse_step));
    rows.emplace_back("solver.tau_end_ps", format_g17(sim.tau_end));
    rows.emplace_back("solver.s_max_ps", format_g17(table.s_max));
    rows.emplace_back("solver.s_step_ps", format_g17(table.step));
    rows.emplace_back("solver.omega_panels", std::to_string(omega_panels));
    rows.emplace_back("solver.steady_t_max_ps", format_g17(sim.ss_t_max));
    rows.emplace_back("output.directory", out_dir);
    rows.emplace_back("output.prefix", prefix);
    rows.emplace_back("output.spectrum_omega_max_ps_inv", format_g17(spectrum_omega_max));
    rows.emplace_back("output.spectrum_points", std::to_string(spectrum_points));
    rows.emplace_back("output.sideband_window_ps_inv", format_g17(sideband_window));
    rows.emplace_back("output.witness_t_end_ps", format_g17(witness_t_end));
    rows.emplace_back("output.witness_threshold_ps_inv", format_g17(witness_threshold));
    if (!sweep_parameter.empty()) {
        rows.emplace_back("sweep.parameter", sweep_parameter);
        std::string list;
        for (std::size_t i = 0; i < sweep_values.size(); ++i) {
            list += (i ? "," : "") + format_g17(sweep_values[i]);
        }
        rows.emplace_back("sweep.values", list);
        rows.emplace_back("sweep.target", sweep_target);
    }
    return rows;
}

RunConfig preset(const std::string& name) {
    RunConfig cfg;
    if (name == "paper-fig1") {
        cfg.rabi = 0.12;
        cfg.detuning_auto = true;
        cfg.gamma = 0.01; // 1/gamma = 100 ps
        cfg.bath.eta = 0.03;
        cfg.bath.omega_c = 2.2;
        cfg.bath.temperature = 4.0;
        cfg.mode = SolverMode::Full;
        cfg.prefix = "paper-fig1";
        return cfg;
    }
    if (name == "mollow-eta0") {
        cfg.rabi = 0.12;
        cfg.detuning_auto = false;
        cfg.detuning = 0.0;
        cfg.gamma = 0.01;
        cfg.bath.eta = 0.0;
        cfg.bath.omega_c = 2.2;
        cfg.bath.temperature = 4.0;
        cfg.mode = SolverMode::Full;
        cfg.prefix = "mollow-eta0";
        return cfg;
    }
    throw config_error("unknown preset '" + name + "' (available: paper-fig1, mollow-eta0)");
}

std::vector<std::string> preset_names() {
    return {"paper-fig1", "mollow-eta0"};
}

void apply_override(RunConfig& cfg, const std::string& dotted_key, const std::string& value) {
    const auto it = setters().find(dotted_key);
    if (it == setters().end()) reject_unknown(dotted_key);
    it->second(cfg, dotted_key, value);
}

RunConfig parse_config(const std::string& text, std::optional<RunConfig> base) {
    RunConfig cfg = base.value_or(RunConfig{});
    std::vector<std::string> seen;

    std::istringstream stream(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw config_error("config: malformed section header at line " +
                                   std::to_string(line_no));
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("config: expected 'key = value' at line " + std::to_string(line_no));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            throw config_error("config: key '" + key + "' appears before any [section]");
        }
        const std::string dotted = section + "." + key;
        apply_override(cfg, dotted, value);
        seen.push_back(dotted);
    }

    if (!base.has_value()) {
        std::string missing;
        for (const auto& req : required_keys()) {
            if (std::find(seen.begin(), seen.end(), req) == seen.end()) {
                missing += missing.empty() ? req : (", " + req);
            }
        }
        if (!missing.empty()) {
            throw config_error("config: missing required keys: " + missing);
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path, std::optional<RunConfig> base) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(base));
}

} // namespace nmregress
