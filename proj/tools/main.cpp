#include <cstdio>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pjlab/acceptance.hpp"
#include "pjlab/certificates.hpp"
#include "pjlab/config.hpp"
#include "pjlab/experiment.hpp"
#include "pjlab/svg.hpp"
#include "pjlab/timeseries.hpp"

namespace {

double analytic_h0(const std::string& family, double amplitude) {
    if (family == "sin2") return -amplitude / 2.0;
    if (family == "poly_bump") return -8.0 * amplitude / 15.0;
    throw std::invalid_argument("certify: cannot derive h0 for family '" + family + "'");
}

int cmd_certify(int n, const std::string& damping, std::optional<double> h0_flag,
                const std::string& family, std::optional<double> amplitude, double horizon) {
    double h0 = 0.0;
    if (h0_flag) {
        h0 = *h0_flag;
    } else if (amplitude) {
        h0 = analytic_h0(family, *amplitude);
    } else {
        std::fprintf(stderr, "certify: need --h0 or --family/--amplitude\n");
        return 1;
    }
    const pjlab::DampingProfile profile = pjlab::parse_damping(damping);
    pjlab::RiccatiOptions ropts;
    ropts.t_max = horizon;
    const auto certs = pjlab::certificates_for(h0, n, profile, ropts);
    nlohmann::json arr = nlohmann::json::array();
    bool any = false;
    for (const auto& cert : certs) {
        arr.push_back(nlohmann::json::parse(cert.to_json()));
        any = any || cert.applicable;
    }
    std::printf("%s\n", arr.dump(2).c_str());
    return any ? 0 : 2;
}

int cmd_simulate(const std::string& config_path, const std::vector<std::string>& overrides) {
    pjlab::RunConfig cfg;
    if (!config_path.empty()) cfg = pjlab::parse_run_config_file(config_path);
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("simulate: --set expects key=value, got '" + kv + "'");
        cfg.apply(kv.substr(0, eq), kv.substr(eq + 1));
    }
    const pjlab::SimulationArtifacts art = pjlab::run_experiment(cfg);
    pjlab::write_artifacts(art, cfg.outdir);
    std::printf("wrote %s/series.csv and %s/summary.json\n", cfg.outdir.c_str(),
                cfg.outdir.c_str());
    if (art.run.event.detected) {
        std::printf("breakdown detected at t = %.6g (%s)\n", art.run.event.t_detect,
                    pjlab::breakdown_reason_name(art.run.event.reason).c_str());
    } else {
        std::printf("no breakdown before t_end = %.6g\n", cfg.solver.t_end);
    }
    return 0;
}

int cmd_sweep(const std::string& spec_path, std::optional<int> workers, bool exploratory,
              std::string out_csv) {
    pjlab::SweepSpec spec = pjlab::parse_sweep_spec_file(spec_path);
    if (workers) spec.workers = *workers;
    spec.exploratory = exploratory;
    if (out_csv.empty()) out_csv = spec.base.outdir + "/sweep.csv";
    const int errors = pjlab::run_sweep(spec, out_csv);
    std::printf("wrote %s (%d failed grid points)\n", out_csv.c_str(), errors);
    return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& keys_arg, const std::string& out) {
    std::vector<std::string> keys;
    std::istringstream ss(keys_arg);
    std::string key;
    while (std::getline(ss, key, ',')) {
        if (!key.empty()) keys.push_back(key);
    }
    if (keys.empty()) {
        std::fprintf(stderr, "plot: --keys needs a comma-separated column list\n");
        return 1;
    }
    const pjlab::ColumnTable table = pjlab::read_csv(csv_path);
    pjlab::write_svg_chart(table, keys, out);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int cmd_verify(const std::string& outdir) {
    const auto results = pjlab::run_acceptance(outdir);
    const int failures = pjlab::report_acceptance(results);
    return failures > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pjlab: damped generalized Proudman-Johnson equation laboratory"};
    app.require_subcommand(1);

    // certify
    auto* certify = app.add_subcommand("certify", "evaluate blowup certificates for given data");
    int n = 2;
    std::string damping = "zero";
    std::optional<double> h0_flag;
    std::string family = "sin2";
    std::optional<double> amplitude;
    double horizon = 50.0;
    certify->add_option("--n", n, "dimension parameter n >= 2");
    certify->add_option("--damping", damping, "damping literal (zero|const:M|sat:M,r|exp:c|tab:f)");
    certify->add_option("--h0", h0_flag, "initial datum u0(0)");
    certify->add_option("--family", family, "initial family for deriving h0 (sin2|poly_bump)");
    certify->add_option("--amplitude", amplitude, "initial amplitude for deriving h0");
    certify->add_option("--horizon", horizon, "Riccati integration horizon");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run one simulation from a config file");
    std::string config_path;
    std::vector<std::string> overrides;
    simulate->add_option("config", config_path, "flat key = value config file");
    simulate->add_option("--set", overrides, "override a config key (key=value), repeatable");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep from a spec file");
    std::string spec_path;
    std::optional<int> workers;
    bool exploratory = false;
    std::string sweep_out;
    sweep->add_option("spec", spec_path, "sweep spec file")->required();
    sweep->add_option("--workers", workers, "worker thread count");
    sweep->add_flag("--exploratory", exploratory,
                    "also simulate grid points with no applicable certificate");
    sweep->add_option("--out", sweep_out, "output CSV path (default <outdir>/sweep.csv)");

    // plot
    auto* plot = app.add_subcommand("plot", "emit an SVG line chart from a series CSV");
    std::string csv_path, keys_arg, svg_out = "chart.svg";
    plot->add_option("csv", csv_path, "series.csv path")->required();
    plot->add_option("--keys", keys_arg, "comma-separated column names to plot");
    plot->add_option("--out", svg_out, "output SVG path");

    // verify
    auto* verify = app.add_subcommand("verify", "run the full acceptance/invariant suite");
    std::string verify_out = "verify_out";
    verify->add_option("--outdir", verify_out, "work directory for verification artifacts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // malformed flags exit 1; help/version exit 0
    }

    try {
        if (certify->parsed())
            return cmd_certify(n, damping, h0_flag, family, amplitude, horizon);
        if (simulate->parsed()) return cmd_simulate(config_path, overrides);
        if (sweep->parsed()) return cmd_sweep(spec_path, workers, exploratory, sweep_out);
        if (plot->parsed()) return cmd_plot(csv_path, keys_arg, svg_out);
        if (verify->parsed()) return cmd_verify(verify_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 1;
}
