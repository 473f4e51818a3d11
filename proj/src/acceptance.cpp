#include "pjlab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "pjlab/certificates.hpp"
#include "pjlab/config.hpp"
#include "pjlab/diagnostics.hpp"
#include "pjlab/experiment.hpp"
#include "pjlab/special_functions.hpp"

namespace pjlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

RunConfig acceptance_config(const std::string& damping, std::size_t N) {
    RunConfig cfg;
    cfg.n = 2;
    cfg.damping = damping;
    cfg.family = "sin2";
    cfg.amplitude = 2.0;  // H0 = -1
    cfg.solver.N = N;
    cfg.solver.t_end = 2.0;
    return cfg;
}

// Memoized acceptance runs, keyed by damping literal and grid size.
class RunCache {
  public:
    const SimulationArtifacts& get(const std::string& damping, std::size_t N) {
        const std::string key = damping + "@" + std::to_string(N);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            it = cache_.emplace(key, run_experiment(acceptance_config(damping, N))).first;
        }
        return it->second;
    }

  private:
    std::map<std::string, SimulationArtifacts> cache_;
};

bool same_file_bytes(const std::string& a, const std::string& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& work_dir) {
    std::filesystem::create_directories(work_dir);
    std::vector<CriterionResult> results;
    RunCache runs;
    const double ln2 = std::log(2.0);

    // 1. Threshold reproduction through the scaled-E1 path.
    {
        const auto t0 = Clock::now();
        const double thr1 = certify_unbounded(-1.0, 1.0, 2).threshold;
        const double thr2 = certify_unbounded(-1.0, 0.01, 2).threshold;
        const double secs = seconds_since(t0);
        CriterionResult r;
        r.id = 1;
        r.name = "threshold reproduction (exp:1, exp:0.01)";
        r.pass = std::abs(thr1 - (-0.8385)) <= 0.005 && std::abs(thr2 - (-0.505)) <= 0.005 &&
                 secs < 1.0;
        r.detail = "thr(c=1)=" + fmt(thr1) + " thr(c=0.01)=" + fmt(thr2);
        r.seconds = secs;
        results.push_back(r);
    }

    // 2. Closed-form t_star vs Riccati integration, 20 admissible triples.
    {
        const auto t0 = Clock::now();
        std::mt19937 gen(20250810u);
        std::uniform_real_distribution<double> uM(0.1, 5.0);
        std::uniform_int_distribution<int> un(2, 6);
        std::uniform_real_distribution<double> umargin(1.1, 4.0);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double M = uM(gen);
            const int n = un(gen);
            const double h0 = M * (1.0 - n) / n * umargin(gen);  // strictly below threshold
            const auto cert = certify_bounded(h0, M, n);
            ComparisonContext ctx{n, h0, DampingProfile::constant(M)};
            const auto ric = riccati_blowup_time(ctx);
            if (!cert.applicable || !ric.blowup) {
                worst = 1.0;
                break;
            }
            worst = std::max(worst, std::abs(ric.t_blowup - *cert.t_star) / *cert.t_star);
        }
        const double secs = seconds_since(t0);
        CriterionResult r;
        r.id = 2;
        r.name = "t_star closed form vs Riccati oracle (20 triples)";
        r.pass = worst <= 1e-4 && secs < 10.0;
        r.detail = "worst rel diff = " + fmt(worst);
        r.seconds = secs;
        results.push_back(r);
    }

    // 3. Small-M limit recovers the undamped bound 1/(2 U0).
    {
        const auto t0 = Clock::now();
        const auto cert = certify_bounded(-1.0, 1e-8, 2);
        CriterionResult r;
        r.id = 3;
        r.name = "t_star(M=1e-8) recovers 1/(2 U0)";
        const double ts = cert.applicable ? *cert.t_star : -1.0;
        r.pass = cert.applicable && std::abs(ts - 0.5) <= 1e-6;
        r.detail = "t_star = " + fmt(ts);
        r.seconds = seconds_since(t0);
        results.push_back(r);
    }

    // 4. Undamped simulation bound with refinement stability.
    {
        const auto t0 = Clock::now();
        const auto& hi = runs.get("zero", 1024);
        const auto& lo = runs.get("zero", 512);
        const double secs = seconds_since(t0);
        CriterionResult r;
        r.id = 4;
        r.name = "undamped simulation: breakdown by 1/(2 U0) + 0.02";
        const double t_hi = hi.run.event.t_detect;
        const double t_lo = lo.run.event.t_detect;
        const bool detected = hi.run.event.detected && lo.run.event.detected;
        const double drift = detected ? std::abs(t_hi - t_lo) / t_hi : 1.0;
        r.pass = detected && t_hi <= 0.52 && drift < 0.05 && secs < 60.0;
        r.detail = "t_detect(1024)=" + fmt(t_hi) + " t_detect(512)=" + fmt(t_lo) +
                   " drift=" + fmt(drift);
        r.seconds = secs;
        results.push_back(r);
    }

    // 5. Bounded damping: breakdown by ln 2 + 0.02, monitors clean.
    {
        const auto t0 = Clock::now();
        const auto& art = runs.get("const:1", 1024);
        CriterionResult r;
        r.id = 5;
        r.name = "bounded damping simulation: breakdown by ln2 + 0.02";
        const auto& mon = art.monitors;
        r.pass = art.run.event.detected && art.run.event.t_detect <= ln2 + 0.02 &&
                 mon.lambda_sandwich.enabled && mon.lambda_sandwich.pass &&
                 mon.decay_bound.enabled && mon.decay_bound.pass;
        r.detail = "t_detect=" + fmt(art.run.event.t_detect) +
                   " lambda_worst=" + fmt(mon.lambda_sandwich.worst) +
                   " decay_worst=" + fmt(mon.decay_bound.worst);
        r.seconds = seconds_since(t0);
        results.push_back(r);
    }

    // 6. Unbounded damping: certificate, root residual, detection bound.
    {
        const auto t0 = Clock::now();
        const auto& art = runs.get("exp:1", 1024);
        CriterionResult r;
        r.id = 6;
        r.name = "unbounded damping simulation vs certificate";
        const auto cert = certify_unbounded(art.initial.h0, 1.0, 2);
        double residual = 1.0, tstar = 0.0;
        if (cert.applicable) {
            tstar = *cert.t_star;
            residual = std::abs(unbounded_root_residual(art.initial.h0, 1.0, 2, tstar));
        }
        r.pass = cert.applicable && residual <= 1e-10 && art.run.event.detected &&
                 art.run.event.t_detect <= tstar + 0.05;
        r.detail = "t_star=" + fmt(tstar) + " residual=" + fmt(residual) +
                   " t_detect=" + fmt(art.run.event.t_detect);
        r.seconds = seconds_since(t0);
        results.push_back(r);
    }

    // 7. Identity suite: eq8 <= 1e-3 at N=1024 while max|v| <= 100, and
    //    both residuals drop at least 4x from N=512 to N=1024.
    {
        const auto t0 = Clock::now();
        CriterionResult r;
        r.id = 7;
        r.name = "identity residuals: level and order";
        r.pass = true;
        std::string detail;
        for (const std::string damping : {"zero", "const:1", "exp:1"}) {
            const auto& hi = runs.get(damping, 1024);
            const auto& lo = runs.get(damping, 512);
            const ProblemParams params = ProblemParams::from_n(2);
            const DampingProfile prof = parse_damping(damping);
            const double eq8_hi = max_eq8_residual(hi.run.series, 100.0);
            const double eq8_lo = max_eq8_residual(lo.run.series, 100.0);
            const double en_hi = max_energy_residual(hi.run.series, params, prof, 100.0);
            const double en_lo = max_energy_residual(lo.run.series, params, prof, 100.0);
            const bool ok = eq8_hi <= 1e-3 && eq8_lo >= 4.0 * eq8_hi && en_lo >= 4.0 * en_hi;
            r.pass = r.pass && ok;
            detail += damping + ": eq8=" + fmt(eq8_hi) + " ratio=" + fmt(eq8_lo / eq8_hi) +
                      " energy_ratio=" + fmt(en_lo / en_hi) + "; ";
        }
        r.detail = detail;
        r.seconds = seconds_since(t0);
        results.push_back(r);
    }

    // 8. Inequality suite across every acceptance run.
    {
        const auto t0 = Clock::now();
        CriterionResult r;
        r.id = 8;
        r.name = "Cauchy-Schwarz and H-negativity at every resolved step";
        r.pass = true;
        double worst_cs = 0.0;
        for (const std::string damping : {"zero", "const:1", "exp:1"}) {
            for (std::size_t N : {512u, 1024u}) {
                const auto& mon = runs.get(damping, N).monitors;
                r.pass = r.pass && mon.cauchy_schwarz.pass && mon.h_negative.pass;
                worst_cs = std::max(worst_cs, mon.cauchy_schwarz.worst);
            }
        }
        r.detail = "worst relative CS violation = " + fmt(worst_cs);
        r.seconds = seconds_since(t0);
        results.push_back(r);
    }

    // 9. Special functions against their oracles.
    {
        const auto t0 = Clock::now();
        CriterionResult r;
        r.id = 9;
        r.name = "special functions: e1, e1_scaled, eta identity";
        const bool ok_e1 = std::abs(e1(1.0) - 0.21938393) <= 1e-8;
        // Asymptotic-series oracle 1/x - 1/x^2 + 2/x^3 - 6/x^4 at x = 100.
        const double x = 100.0;
        const double asym = 1.0 / x - 1.0 / (x * x) + 2.0 / (x * x * x) - 6.0 / (x * x * x * x);
        const bool ok_scaled = std::abs(e1_scaled(100.0) - 0.0099019) <= 1e-6 &&
                               std::abs(e1_scaled(100.0) - asym) <= 1e-6;
        double worst_eta = 0.0;
        for (int i = 1; i <= 10; ++i) {
            for (int j = 1; j <= 10; ++j) {
                const double t = 0.05 * i;
                const double c = 0.2 * std::pow(5.0 / 0.2, (j - 1) / 9.0);
                const double lhs = eta(t, c) + e1(std::exp(c * t) / c);
                worst_eta = std::max(worst_eta, std::abs(lhs - e1(1.0 / c)));
            }
        }
        r.pass = ok_e1 && ok_scaled && worst_eta <= 1e-12;
        r.detail = "e1(1)=" + fmt(e1(1.0)) + " e1s(100)=" + fmt(e1_scaled(100.0)) +
                   " eta identity worst=" + fmt(worst_eta);
        r.seconds = seconds_since(t0);
        results.push_back(r);
    }

    // 10. Determinism: repeated simulate byte-identical; sweep output
    //     independent of worker count.
    {
        const auto t0 = Clock::now();
        CriterionResult r;
        r.id = 10;
        r.name = "determinism of simulate and sweep";
        bool ok = true;
        for (const std::string damping : {"zero", "const:1", "exp:1"}) {
            const std::string tag = damping.substr(0, damping.find(':'));
            const std::string d1 = work_dir + "/repeat_a_" + tag;
            const std::string d2 = work_dir + "/repeat_b_" + tag;
            write_artifacts(run_experiment(acceptance_config(damping, 1024)), d1);
            write_artifacts(run_experiment(acceptance_config(damping, 1024)), d2);
            ok = ok && same_file_bytes(d1 + "/series.csv", d2 + "/series.csv");
        }
        SweepSpec spec;
        spec.n_values = {2, 3};
        spec.damping_values = {"zero", "const:1"};
        spec.amplitude_values = {1.0, 2.0};
        spec.base.solver.N = 256;
        spec.base.solver.t_end = 0.3;
        spec.exploratory = true;
        spec.workers = 1;
        run_sweep(spec, work_dir + "/sweep_w1.csv");
        spec.workers = 8;
        run_sweep(spec, work_dir + "/sweep_w8.csv");
        ok = ok && same_file_bytes(work_dir + "/sweep_w1.csv", work_dir + "/sweep_w8.csv");
        r.pass = ok;
        r.detail = ok ? "byte-identical outputs" : "outputs differ";
        r.seconds = seconds_since(t0);
        results.push_back(r);
    }

    return results;
}

int report_acceptance(const std::vector<CriterionResult>& results) {
    int failures = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failures;
        std::printf("[%2d] %s  %s (%s) [%.2f s]\n", r.id, r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.detail.c_str(), r.seconds);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures;
}

}  // namespace pjlab
