#include "pjlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "pjlab/certificates.hpp"

namespace pjlab {

namespace {

// Derivative at t_eval of the quadratic through three (t, f) samples.
double lagrange3_derivative(double t0, double f0, double t1, double f1, double t2, double f2,
                            double t_eval) {
    return f0 * (2.0 * t_eval - t1 - t2) / ((t0 - t1) * (t0 - t2)) +
           f1 * (2.0 * t_eval - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
           f2 * (2.0 * t_eval - t0 - t1) / ((t2 - t0) * (t2 - t1));
}

// Index triple for the 3-point stencil used at record j.
void stencil(std::size_t j, std::size_t m, std::size_t& a, std::size_t& b, std::size_t& c) {
    if (j == 0) {
        a = 0; b = 1; c = 2;
    } else if (j == m - 1) {
        a = m - 3; b = m - 2; c = m - 1;
    } else {
        a = j - 1; b = j; c = j + 1;
    }
}

}  // namespace

void fill_eq8_residuals(TimeSeries& series, const DampingProfile& profile, int n) {
    const std::size_t m = series.size();
    if (m < 3) {
        for (auto& rec : series) rec.eq8_residual = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    const double kappa = n / (n - 1.0);
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t a, b, c;
        stencil(j, m, a, b, c);
        const double dHdt = lagrange3_derivative(series[a].t, series[a].H, series[b].t,
                                                 series[b].H, series[c].t, series[c].H,
                                                 series[j].t);
        const double damp = profile.alpha(series[j].t) * series[j].H;
        const double quad = kappa * series[j].l2vsq;
        const double denom = std::max({1.0, std::abs(dHdt), std::abs(damp), std::abs(quad)});
        series[j].eq8_residual = std::abs(dHdt + damp + quad) / denom;
    }
}

std::vector<double> energy_identity_residuals(const TimeSeries& series,
                                              const ProblemParams& params,
                                              const DampingProfile& profile) {
    const std::size_t m = series.size();
    std::vector<double> out(m, std::numeric_limits<double>::quiet_NaN());
    if (m < 3) return out;
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t a, b, c;
        stencil(j, m, a, b, c);
        const double dLdt = lagrange3_derivative(series[a].t, series[a].l2vsq, series[b].t,
                                                 series[b].l2vsq, series[c].t, series[c].l2vsq,
                                                 series[j].t);
        const double cubic = (2.0 - params.beta) * series[j].intv3;
        const double damp = 2.0 * profile.alpha(series[j].t) * series[j].l2vsq;
        const double denom = std::max({1.0, std::abs(dLdt), std::abs(cubic), std::abs(damp)});
        out[j] = std::abs(dLdt - cubic + damp) / denom;
    }
    return out;
}

double cauchy_schwarz_violation(const TimeSeriesRecord& rec) {
    const double v = rec.H * rec.H - rec.l2vsq;
    return v > 0.0 ? v / std::max(1.0, rec.l2vsq) : 0.0;
}

double decay_bound_violation(const TimeSeriesRecord& rec, double h0,
                             const DampingProfile& profile) {
    const double bound = h0 * std::exp(-profile.integral(rec.t));
    const double v = rec.H - bound;
    return v > 0.0 ? v : 0.0;
}

double lambda_violation(const TimeSeriesRecord& rec, double h0, double M, int n) {
    const auto cert = certify_bounded(h0, M, n);
    if (!cert.applicable || rec.t >= *cert.t_star) return 0.0;
    const double invH = 1.0 / rec.H;
    double worst = std::max(0.0, invH);  // 1/H must be <= 0
    const double lam = lambda_of(h0, M, n, rec.t);
    worst = std::max(worst, (lam - 1e-8) - invH);  // 1/H must sit above Lambda
    return std::max(worst, 0.0);
}

bool MonitorReport::all_pass() const {
    for (const MonitorCheck* c : {&cauchy_schwarz, &decay_bound, &lambda_sandwich, &h_negative}) {
        if (c->enabled && !c->pass) return false;
    }
    return true;
}

std::string MonitorReport::to_json() const {
    auto check_json = [](const MonitorCheck& c) {
        nlohmann::json j;
        j["enabled"] = c.enabled;
        j["pass"] = c.pass;
        j["worst"] = c.worst;
        j["t_worst"] = c.t_worst;
        j["tol"] = c.tol;
        return j;
    };
    nlohmann::json j;
    j["resolvability_cap"] = resolvability_cap;
    j["resolved_steps"] = resolved_steps;
    j["under_resolved_steps"] = under_resolved_steps;
    j["cauchy_schwarz"] = check_json(cauchy_schwarz);
    j["decay_bound"] = check_json(decay_bound);
    j["lambda_sandwich"] = check_json(lambda_sandwich);
    j["h_negative"] = check_json(h_negative);
    j["lambda_skipped"] = lambda_skipped;
    j["eq8_max_resolved"] = eq8_max_resolved;
    j["energy_max_resolved"] = energy_max_resolved;
    j["all_pass"] = all_pass();
    return j.dump();
}

MonitorReport compute_monitor_report(const TimeSeries& series, double h0,
                                     const ProblemParams& params,
                                     const DampingProfile& profile) {
    MonitorReport rep;
    if (series.empty()) return rep;
    rep.resolvability_cap = 1e3 * std::max(series.front().max_v, 0.0);

    const SupBound sup = profile.sup_bound();
    bool lambda_on = false;
    if (sup.value && h0 < *sup.value * (1.0 - params.n) / params.n) {
        lambda_on = true;
    } else {
        rep.lambda_skipped = true;
    }

    rep.cauchy_schwarz = {true, true, 0.0, 0.0, 1e-10};
    rep.decay_bound = {h0 < 0.0, true, 0.0, 0.0, 1e-6 * std::abs(h0)};
    rep.lambda_sandwich = {lambda_on, true, 0.0, 0.0, 0.0};
    rep.h_negative = {h0 < 0.0, true, 0.0, 0.0, 0.0};

    auto update = [](MonitorCheck& c, double violation, double t) {
        if (violation > c.worst) {
            c.worst = violation;
            c.t_worst = t;
        }
        if (violation > c.tol) c.pass = false;
    };

    const std::vector<double> energy = energy_identity_residuals(series, params, profile);
    for (std::size_t j = 0; j < series.size(); ++j) {
        const auto& rec = series[j];
        if (rec.max_v > rep.resolvability_cap) {
            ++rep.under_resolved_steps;
            continue;
        }
        ++rep.resolved_steps;
        update(rep.cauchy_schwarz, cauchy_schwarz_violation(rec), rec.t);
        if (rep.decay_bound.enabled)
            update(rep.decay_bound, decay_bound_violation(rec, h0, profile), rec.t);
        if (rep.lambda_sandwich.enabled)
            update(rep.lambda_sandwich, lambda_violation(rec, h0, *sup.value, params.n), rec.t);
        if (rep.h_negative.enabled) update(rep.h_negative, std::max(0.0, rec.H), rec.t);
        if (std::isfinite(rec.eq8_residual))
            rep.eq8_max_resolved = std::max(rep.eq8_max_resolved, rec.eq8_residual);
        if (std::isfinite(energy[j]))
            rep.energy_max_resolved = std::max(rep.energy_max_resolved, energy[j]);
    }
    return rep;
}

double max_eq8_residual(const TimeSeries& series, double v_cap) {
    double worst = 0.0;
    for (const auto& rec : series) {
        if (rec.max_v <= v_cap && std::isfinite(rec.eq8_residual))
            worst = std::max(worst, rec.eq8_residual);
    }
    return worst;
}

double max_energy_residual(const TimeSeries& series, const ProblemParams& params,
                           const DampingProfile& profile, double v_cap) {
    const std::vector<double> res = energy_identity_residuals(series, params, profile);
    double worst = 0.0;
    for (std::size_t j = 0; j < series.size(); ++j) {
        if (series[j].max_v <= v_cap && std::isfinite(res[j]))
            worst = std::max(worst, res[j]);
    }
    return worst;
}

}  // namespace pjlab
