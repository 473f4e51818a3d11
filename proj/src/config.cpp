#include "pjlab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pjlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for '" + key + "': " + value);
    }
}

long to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer value for '" + key + "': " + value);
    }
}

// Iterates key = value lines, handing each pair to sink.
template <typename Sink>
void parse_kv_text(const std::string& text, Sink&& sink) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value, got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config: empty key in '" + stripped + "'");
        sink(key, value);
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

void RunConfig::apply(const std::string& key, const std::string& value) {
    if (key == "n") {
        n = static_cast<int>(to_int(key, value));
    } else if (key == "damping") {
        damping = value;
    } else if (key == "family") {
        family = value;
    } else if (key == "amplitude") {
        amplitude = to_real(key, value);
    } else if (key == "N") {
        solver.N = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "cfl") {
        solver.cfl = to_real(key, value);
    } else if (key == "dt_min") {
        solver.dt_min = to_real(key, value);
    } else if (key == "v_max") {
        solver.v_max = to_real(key, value);
    } else if (key == "t_end") {
        solver.t_end = to_real(key, value);
    } else if (key == "rk_tol") {
        solver.rk_tol = to_real(key, value);
    } else if (key == "safety") {
        solver.safety = to_real(key, value);
    } else if (key == "outdir") {
        outdir = value;
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

std::string RunConfig::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["damping"] = damping;
    j["family"] = family;
    j["amplitude"] = amplitude;
    j["N"] = solver.N;
    j["cfl"] = solver.cfl;
    j["dt_min"] = solver.dt_min;
    j["v_max"] = solver.v_max;
    j["t_end"] = solver.t_end;
    j["rk_tol"] = solver.rk_tol;
    j["safety"] = solver.safety;
    j["outdir"] = outdir;
    return j.dump();
}

RunConfig parse_run_config_text(const std::string& text) {
    RunConfig cfg;
    parse_kv_text(text, [&](const std::string& k, const std::string& v) { cfg.apply(k, v); });
    return cfg;
}

RunConfig parse_run_config_file(const std::string& path) {
    return parse_run_config_text(slurp(path));
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

}  // namespace

SweepSpec parse_sweep_spec_text(const std::string& text) {
    SweepSpec spec;
    parse_kv_text(text, [&](const std::string& k, const std::string& v) {
        if (k == "n_list") {
            for (const auto& item : split(v, ','))
                spec.n_values.push_back(static_cast<int>(to_int(k, item)));
        } else if (k == "damping_list") {
            spec.damping_values = split(v, ';');
        } else if (k == "amplitude_list") {
            for (const auto& item : split(v, ',')) spec.amplitude_values.push_back(to_real(k, item));
        } else if (k == "workers") {
            spec.workers = static_cast<int>(to_int(k, v));
        } else {
            spec.base.apply(k, v);
        }
    });
    if (spec.n_values.empty()) spec.n_values.push_back(spec.base.n);
    if (spec.damping_values.empty()) spec.damping_values.push_back(spec.base.damping);
    if (spec.amplitude_values.empty()) spec.amplitude_values.push_back(spec.base.amplitude);
    if (spec.workers < 1) throw std::invalid_argument("sweep: workers must be >= 1");
    return spec;
}

SweepSpec parse_sweep_spec_file(const std::string& path) {
    return parse_sweep_spec_text(slurp(path));
}

}  // namespace pjlab
