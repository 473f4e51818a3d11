#include "pjlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "pjlab/numfmt.hpp"

namespace pjlab {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

std::vector<BlowupCertificate> certificates_for(double h0, int n, const DampingProfile& profile,
                                                const RiccatiOptions& ropts) {
    std::vector<BlowupCertificate> out;
    switch (profile.family()) {
        case DampingFamily::zero:
            if (n == 2) out.push_back(certify_yuen(h0));
            break;
        case DampingFamily::constant:
        case DampingFamily::saturating:
            out.push_back(certify_bounded(h0, *profile.sup_bound().value, n));
            break;
        case DampingFamily::tabulated: {
            const SupBound sup = profile.sup_bound();
            if (sup.value && *sup.value > 0.0) {
                auto cert = certify_bounded(h0, *sup.value, n);
                cert.sup_caveat = true;
                cert.notes = "M taken over the tabulated range only";
                out.push_back(cert);
            }
            break;
        }
        case DampingFamily::exponential:
            out.push_back(certify_unbounded(h0, profile.param_c(), n));
            break;
    }

    BlowupCertificate ric;
    ric.theorem_id = TheoremId::riccati_numeric;
    ric.h0 = h0;
    ric.threshold = 0.0;
    ric.n = n;
    const SupBound sup = profile.sup_bound();
    if (sup.value) ric.M = *sup.value;
    if (profile.family() == DampingFamily::exponential) ric.c = profile.param_c();
    if (h0 < 0.0) {
        ComparisonContext ctx{n, h0, profile};
        const RiccatiResult res = riccati_blowup_time(ctx, ropts);
        ric.applicable = res.blowup;
        if (res.blowup) ric.t_star = res.t_blowup;
        ric.notes = res.stop_reason;
    } else {
        ric.notes = "requires h0 < 0";
    }
    out.push_back(ric);
    return out;
}

std::optional<double> SimulationArtifacts::t_star() const {
    for (const auto& cert : certificates) {
        if (cert.theorem_id != TheoremId::riccati_numeric && cert.applicable) return cert.t_star;
    }
    return std::nullopt;
}

SimulationArtifacts run_experiment(const RunConfig& cfg) {
    SimulationArtifacts art;
    art.config = cfg;
    const ProblemParams params = ProblemParams::from_n(cfg.n);
    const DampingProfile profile = parse_damping(cfg.damping);
    art.initial = build_initial(parse_initial_family(cfg.family), cfg.amplitude, cfg.solver.N);
    art.compatibility = compatibility_check(art.initial);

    Simulation sim(art.initial, params, profile, cfg.solver);
    art.run = sim.run();
    fill_eq8_residuals(art.run.series, profile, cfg.n);
    art.monitors = compute_monitor_report(art.run.series, art.initial.h0, params, profile);
    art.certificates = certificates_for(art.initial.h0, cfg.n, profile);

    if (art.run.last.t > art.run.prev.t) {
        art.omega_residual_final = omega_residual(art.run.prev, art.run.last, params, profile);
        art.omega_final_resolved =
            art.run.series.back().max_v <= art.monitors.resolvability_cap;
    }
    return art;
}

ColumnTable make_run_table(const SimulationArtifacts& art) {
    const DampingProfile profile = parse_damping(art.config.damping);
    const ProblemParams params = ProblemParams::from_n(art.config.n);
    const TimeSeries& s = art.run.series;
    const std::vector<double> energy = energy_identity_residuals(s, params, profile);
    const double h0 = art.initial.h0;

    const SupBound sup = profile.sup_bound();
    const bool lambda_on = art.monitors.lambda_sandwich.enabled;
    std::optional<double> lambda_tstar;
    if (lambda_on) lambda_tstar = certify_bounded(h0, *sup.value, art.config.n).t_star;

    ColumnTable table;
    table.names = {"t",     "H",     "l2vsq",           "max_v",       "min_u", "dt",
                   "eq8_residual",   "intv3", "energy_residual", "decay_bound", "inv_H",
                   "lambda", "resolved"};
    table.cols.assign(table.names.size(), {});
    for (std::size_t j = 0; j < s.size(); ++j) {
        const auto& rec = s[j];
        double lam = kNan;
        if (lambda_on && rec.t < *lambda_tstar)
            lam = lambda_of(h0, *sup.value, art.config.n, rec.t);
        const double cells[] = {
            rec.t,
            rec.H,
            rec.l2vsq,
            rec.max_v,
            rec.min_u,
            rec.dt,
            rec.eq8_residual,
            rec.intv3,
            energy[j],
            h0 * std::exp(-profile.integral(rec.t)),
            rec.H != 0.0 ? 1.0 / rec.H : kNan,
            lam,
            rec.max_v <= art.monitors.resolvability_cap ? 1.0 : 0.0,
        };
        for (std::size_t c = 0; c < table.cols.size(); ++c) table.cols[c].push_back(cells[c]);
    }
    return table;
}

std::string make_summary_json(const SimulationArtifacts& art) {
    nlohmann::json j;
    j["config"] = nlohmann::json::parse(art.config.to_json());
    {
        nlohmann::json init;
        init["family"] = initial_family_name(art.initial.family);
        init["amplitude"] = art.initial.amplitude;
        init["h0"] = art.initial.h0;
        nlohmann::json compat;
        compat["u0_at_1"] = art.compatibility.u0_at_1;
        compat["v0_at_0"] = art.compatibility.v0_at_0;
        compat["v0_at_1"] = art.compatibility.v0_at_1;
        compat["omega0_at_0"] = art.compatibility.omega0_at_0;
        compat["omega_warning"] = art.compatibility.omega_warning;
        init["compatibility"] = compat;
        j["initial"] = init;
    }
    {
        nlohmann::json b;
        b["detected"] = art.run.event.detected;
        b["t_detect"] = art.run.event.t_detect;
        b["reason"] = breakdown_reason_name(art.run.event.reason);
        b["max_v"] = art.run.event.max_v;
        if (art.run.event.t_extrapolated)
            b["t_extrapolated"] = *art.run.event.t_extrapolated;
        else
            b["t_extrapolated"] = nullptr;
        j["breakdown"] = b;
    }
    {
        nlohmann::json certs = nlohmann::json::array();
        for (const auto& cert : art.certificates)
            certs.push_back(nlohmann::json::parse(cert.to_json()));
        j["certificates"] = certs;
    }
    j["monitors"] = nlohmann::json::parse(art.monitors.to_json());
    {
        nlohmann::json cmp;
        const auto ts = art.t_star();
        cmp["t_star"] = ts ? nlohmann::json(*ts) : nlohmann::json(nullptr);
        cmp["t_detect"] = art.run.event.detected ? nlohmann::json(art.run.event.t_detect)
                                                 : nlohmann::json(nullptr);
        if (ts && art.run.event.detected) {
            cmp["ratio_detect_over_star"] = art.run.event.t_detect / *ts;
            if (art.run.event.t_extrapolated) {
                const double te = *art.run.event.t_extrapolated;
                cmp["sandwich_ok"] = te >= art.run.event.t_detect && te <= *ts + 0.05;
            } else {
                cmp["sandwich_ok"] = nullptr;
            }
        } else {
            cmp["ratio_detect_over_star"] = nullptr;
            cmp["sandwich_ok"] = nullptr;
        }
        j["comparison"] = cmp;
    }
    {
        nlohmann::json om;
        om["value"] = art.omega_residual_final;
        om["resolved"] = art.omega_final_resolved;
        j["omega_residual_final"] = om;
    }
    {
        nlohmann::json st;
        st["accepted"] = art.run.steps_accepted;
        st["rejected"] = art.run.steps_rejected;
        j["steps"] = st;
    }
    return j.dump(2) + "\n";
}

void write_artifacts(const SimulationArtifacts& art, const std::string& outdir) {
    std::filesystem::create_directories(outdir);
    write_csv(make_run_table(art), outdir + "/series.csv");
    std::ofstream out(outdir + "/summary.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + outdir + "/summary.json");
    out << make_summary_json(art);
}

namespace {

struct GridPoint {
    int n;
    std::string damping;
    double amplitude;
};

std::vector<std::string> sweep_row(const SweepSpec& spec, const GridPoint& gp) {
    RunConfig cfg = spec.base;
    cfg.n = gp.n;
    cfg.damping = gp.damping;
    cfg.amplitude = gp.amplitude;

    std::vector<std::string> row{std::to_string(gp.n), gp.damping, cfg.family,
                                 fmt_double(gp.amplitude)};
    auto pad_error = [&row]() {
        while (row.size() < 15) row.push_back("nan");
        row[5] = "error";
    };
    try {
        const DampingProfile profile = parse_damping(cfg.damping);
        const InitialData initial =
            build_initial(parse_initial_family(cfg.family), cfg.amplitude, cfg.solver.N);
        const auto certs = certificates_for(initial.h0, cfg.n, profile);
        const BlowupCertificate* theorem = nullptr;
        for (const auto& cert : certs) {
            if (cert.theorem_id != TheoremId::riccati_numeric) theorem = &cert;
        }
        const BlowupCertificate& ric = certs.back();

        std::string status;
        bool simulate = true;
        if (theorem && theorem->applicable) {
            status = "certified";
        } else if (!theorem) {
            status = "uncertified";  // no theorem covers this family/n combination
        } else if (spec.exploratory) {
            status = "exploratory";  // condition fails: the open regime
        } else {
            status = "skipped";
            simulate = false;
        }

        row.push_back(fmt_double(initial.h0));
        row.push_back(status);
        row.push_back(theorem ? theorem_id_name(theorem->theorem_id) : "none");
        row.push_back(theorem ? fmt_double(theorem->threshold) : "nan");
        row.push_back(theorem && theorem->t_star ? fmt_double(*theorem->t_star) : "nan");
        row.push_back(ric.t_star ? fmt_double(*ric.t_star) : "nan");

        if (simulate) {
            const SimulationArtifacts art = run_experiment(cfg);
            const bool det = art.run.event.detected;
            row.push_back(det ? fmt_double(art.run.event.t_detect) : "nan");
            row.push_back(art.run.event.t_extrapolated ? fmt_double(*art.run.event.t_extrapolated)
                                                       : "nan");
            row.push_back(breakdown_reason_name(art.run.event.reason));
            const auto ts = art.t_star();
            row.push_back(det && ts ? fmt_double(art.run.event.t_detect / *ts) : "nan");
            row.push_back(art.monitors.all_pass() ? "1" : "0");
        } else {
            row.insert(row.end(), {"nan", "nan", "not_run", "nan", "nan"});
        }
    } catch (const std::exception&) {
        pad_error();
    }
    return row;
}

}  // namespace

int run_sweep(const SweepSpec& spec, const std::string& csv_path) {
    std::vector<GridPoint> grid;
    for (int n : spec.n_values)
        for (const auto& d : spec.damping_values)
            for (double a : spec.amplitude_values) grid.push_back({n, d, a});

    std::vector<std::vector<std::string>> rows(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) break;
            rows[i] = sweep_row(spec, grid[i]);
        }
    };
    const int nthreads = std::min<int>(spec.workers, static_cast<int>(grid.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(grid[a].n, grid[a].damping, grid[a].amplitude) <
               std::tie(grid[b].n, grid[b].damping, grid[b].amplitude);
    });

    if (const auto dir = std::filesystem::path(csv_path).parent_path(); !dir.empty())
        std::filesystem::create_directories(dir);
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    out << "n,damping,family,amplitude,h0,status,cert_theorem,cert_threshold,cert_t_star,"
           "riccati_t_star,t_detect,t_extrapolated,reason,ratio_detect_over_cert,monitors_pass\n";
    int errors = 0;
    for (std::size_t i : order) {
        const auto& row = rows[i];
        if (row.size() > 5 && row[5] == "error") ++errors;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << row[c];
        }
        out << '\n';
    }
    return errors;
}

}  // namespace pjlab
