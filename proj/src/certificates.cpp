#include "pjlab/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "pjlab/linfit.hpp"
#include "pjlab/quadrature.hpp"
#include "pjlab/rk45.hpp"
#include "pjlab/special_functions.hpp"

namespace pjlab {

std::string theorem_id_name(TheoremId id) {
    switch (id) {
        case TheoremId::yuen_2_1: return "yuen_2_1";
        case TheoremId::bounded_3_1: return "bounded_3_1";
        case TheoremId::unbounded_4_1: return "unbounded_4_1";
        case TheoremId::riccati_numeric: return "riccati_numeric";
    }
    return "unknown";
}

std::string BlowupCertificate::to_json() const {
    nlohmann::json params;
    params["n"] = n;
    if (M) params["M"] = *M;
    if (c) params["c"] = *c;
    if (sup_caveat) params["sup_caveat"] = true;
    nlohmann::json j;
    j["theorem_id"] = theorem_id_name(theorem_id);
    j["applicable"] = applicable;
    j["h0"] = h0;
    j["threshold"] = threshold;
    if (t_star)
        j["t_star"] = *t_star;
    else
        j["t_star"] = nullptr;
    j["params"] = params;
    if (!notes.empty()) j["notes"] = notes;
    return j.dump();
}

BlowupCertificate certify_yuen(double u0_at_0) {
    BlowupCertificate cert;
    cert.theorem_id = TheoremId::yuen_2_1;
    cert.h0 = u0_at_0;
    cert.threshold = 0.0;  // condition: U0 = -u0(0) > 0
    cert.n = 2;
    cert.notes = "undamped";
    const double U0 = -u0_at_0;
    if (U0 > 0.0) {
        cert.applicable = true;
        cert.t_star = 1.0 / (2.0 * U0);
    }
    return cert;
}

BlowupCertificate certify_bounded(double h0, double M, int n) {
    if (!(M > 0.0)) throw std::domain_error("certify_bounded: requires M > 0");
    if (n < 2) throw std::domain_error("certify_bounded: requires n >= 2");
    BlowupCertificate cert;
    cert.theorem_id = TheoremId::bounded_3_1;
    cert.h0 = h0;
    cert.n = n;
    cert.M = M;
    cert.threshold = M * (1.0 - n) / n;
    if (h0 < cert.threshold) {
        const double q = M * (1.0 - n) / (n * h0);
        // The condition h0 < M(1-n)/n is equivalent to q in (0,1), which
        // keeps the log argument 1 - q inside (0,1).
        if (!(q > 0.0 && q < 1.0))
            throw std::logic_error("certify_bounded: log argument left (0,1) despite condition");
        cert.applicable = true;
        cert.t_star = -std::log1p(-q) / M;
    }
    return cert;
}

double unbounded_root_residual(double h0, double c, int n, double t) {
    // 1 + h0 phi(n) eta(t) with phi(n) = n e^{1/c} / (c(n-1)); the e^{1/c}
    // factor is folded into eta_scaled so nothing overflows for small c.
    return 1.0 + h0 * (n / (c * (n - 1.0))) * eta_scaled(t, c);
}

BlowupCertificate certify_unbounded(double h0, double c, int n) {
    if (!(c > 0.0)) throw std::domain_error("certify_unbounded: requires c > 0");
    if (n < 2) throw std::domain_error("certify_unbounded: requires n >= 2");
    BlowupCertificate cert;
    cert.theorem_id = TheoremId::unbounded_4_1;
    cert.h0 = h0;
    cert.n = n;
    cert.c = c;
    cert.threshold = -c * (n - 1.0) / (n * e1_scaled(1.0 / c));
    if (!(h0 < cert.threshold)) return cert;
    cert.applicable = true;

    // Root of F(t) = 1 + h0 phi eta(t): F(0) = 1 and F decreases to
    // 1 + h0/|threshold| < 0, so a bracket always exists.
    auto F = [&](double t) { return unbounded_root_residual(h0, c, n, t); };
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (F(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 400) throw std::logic_error("certify_unbounded: bracket search failed");
    }
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (F(mid) > 0.0 ? lo : hi) = mid;
    }
    cert.t_star = 0.5 * (lo + hi);
    return cert;
}

double g_of(const ComparisonContext& ctx, double t) {
    if (t < 0.0) throw std::domain_error("g_of: requires t >= 0");
    if (t == 0.0) return 0.0;
    const double n = ctx.n;
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-13;
    spec.max_subdivisions = 20000;
    const double integral = adaptive_simpson(
        [&](double s) { return std::exp(-ctx.profile.integral(s)); }, 0.0, t, spec);
    return n / (n - 1.0) * integral;
}

double lambda_of(double h0, double M, int n, double t) {
    if (!(M > 0.0)) throw std::domain_error("lambda_of: requires M > 0");
    if (n < 2) throw std::domain_error("lambda_of: requires n >= 2");
    if (t < 0.0) throw std::domain_error("lambda_of: requires t >= 0");
    if (!(h0 < M * (1.0 - n) / n))
        throw std::domain_error("lambda_of: bounded-damping condition fails, N(t) has no zero");
    const double N = M * (n - 1.0) + n * h0 * -std::expm1(-M * t);
    const double gprime = n / (n - 1.0) * std::exp(-M * t);
    return n * N / ((n - 1.0) * (n - 1.0) * M * h0 * gprime);
}

RiccatiResult riccati_blowup_time(const ComparisonContext& ctx, const RiccatiOptions& opts) {
    if (!(ctx.h0 < 0.0)) throw std::domain_error("riccati_blowup_time: requires h0 < 0");
    if (ctx.n < 2) throw std::domain_error("riccati_blowup_time: requires n >= 2");
    const double kappa = ctx.n / (ctx.n - 1.0);
    const auto& prof = ctx.profile;
    const bool alpha_nondecreasing = prof.family() != DampingFamily::tabulated;

    auto f = [&](double t, double h) { return -prof.alpha(t) * h - kappa * h * h; };

    double t = 0.0;
    double h = ctx.h0;
    std::vector<std::pair<double, double>> tail;  // (t, 1/h) ring of accepted steps
    tail.reserve(opts.fit_points + 1);
    auto push_tail = [&](double tt, double hh) {
        tail.emplace_back(tt, 1.0 / hh);
        if (tail.size() > static_cast<std::size_t>(opts.fit_points)) tail.erase(tail.begin());
    };
    push_tail(t, h);

    RiccatiResult res;
    auto finish_blowup = [&](const char* reason) {
        res.blowup = true;
        res.stop_reason = reason;
        const auto cross = fit_zero_crossing(tail);
        res.t_blowup = cross ? std::max(*cross, t) : t;
        res.t_last = t;
        res.h_last = h;
        return res;
    };

    const double f0 = f(0.0, h);
    double dt = 0.01 * std::abs(h) / std::max(std::abs(f0), 1e-30);
    dt = std::min({dt, opts.t_max * 0.1, 1.0});

    double k[rk45::kStages];
    while (true) {
        if (t >= opts.t_max) {
            res.stop_reason = "horizon";
            break;
        }
        if (alpha_nondecreasing && kappa * std::abs(h) < prof.alpha(t)) {
            // alpha only grows from here, so |h| decays monotonically.
            res.stop_reason = "decay";
            break;
        }
        if (h >= 0.0) {
            res.stop_reason = "decay";
            break;
        }
        dt = std::min(dt, opts.t_max - t);
        if (dt < opts.dt_min) {
            if (std::abs(h) > 1e6 * std::max(1.0, std::abs(ctx.h0)))
                return finish_blowup("dt_collapse");
            res.stop_reason = "dt_collapse";
            break;
        }

        for (int s = 0; s < rk45::kStages; ++s) {
            double y = h;
            for (int j = 0; j < s; ++j) y += dt * rk45::kA[s][j] * k[j];
            k[s] = f(t + rk45::kC[s] * dt, y);
        }
        double hnew = h, err = 0.0;
        for (int s = 0; s < rk45::kStages; ++s) {
            hnew += dt * rk45::kB[s] * k[s];
            err += dt * rk45::kE[s] * k[s];
        }
        if (!std::isfinite(hnew) || !std::isfinite(err)) {
            dt *= 0.25;
            continue;
        }
        const double scale = opts.abs_tol + opts.rel_tol * std::max(std::abs(h), std::abs(hnew));
        const double err_norm = std::abs(err) / scale;
        if (err_norm <= 1.0) {
            t += dt;
            h = hnew;
            push_tail(t, h);
            if (std::abs(h) > opts.blowup_threshold) return finish_blowup("h_threshold");
            const double grow = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
            dt *= std::clamp(grow, 0.2, 5.0);
        } else {
            dt *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.1, 0.9);
        }
    }
    res.t_last = t;
    res.h_last = h;
    return res;
}

}  // namespace pjlab
