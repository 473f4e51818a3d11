#include "pjlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pjlab/grid.hpp"
#include "pjlab/linfit.hpp"
#include "pjlab/rk45.hpp"

namespace pjlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kMaxSteps = 20'000'000;

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

ProblemParams ProblemParams::from_n(int n) {
    if (n < 2) throw std::invalid_argument("ProblemParams: requires n >= 2");
    ProblemParams p;
    p.n = n;
    p.beta = static_cast<double>(n - 3) / (n - 1);
    return p;
}

InitialFamily parse_initial_family(const std::string& name) {
    if (name == "sin2") return InitialFamily::sin2;
    if (name == "poly_bump") return InitialFamily::poly_bump;
    if (name == "custom") return InitialFamily::custom;
    throw std::invalid_argument("unknown initial family '" + name + "'");
}

std::string initial_family_name(InitialFamily f) {
    switch (f) {
        case InitialFamily::sin2: return "sin2";
        case InitialFamily::poly_bump: return "poly_bump";
        case InitialFamily::custom: return "custom";
    }
    return "custom";
}

std::string breakdown_reason_name(BreakdownReason r) {
    switch (r) {
        case BreakdownReason::v_max_exceeded: return "v_max_exceeded";
        case BreakdownReason::dt_collapse: return "dt_collapse";
        case BreakdownReason::horizon_reached: return "horizon_reached";
    }
    return "horizon_reached";
}

void SolverConfig::validate() const {
    if (N < 128 || (N & (N - 1)) != 0)
        throw std::invalid_argument("SolverConfig: N must be a power of two >= 128");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("SolverConfig: cfl must be in (0,1]");
    if (!(dt_min > 0.0)) throw std::invalid_argument("SolverConfig: dt_min must be positive");
    if (!(v_max > 0.0)) throw std::invalid_argument("SolverConfig: v_max must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
    if (!(rk_tol > 0.0)) throw std::invalid_argument("SolverConfig: rk_tol must be positive");
    if (!(safety > 0.0)) throw std::invalid_argument("SolverConfig: safety must be positive");
}

InitialData build_initial(InitialFamily family, double amplitude, std::size_t N) {
    if (N < 128 || N % 2 != 0)
        throw std::invalid_argument("build_initial: need even N >= 128");
    if (family == InitialFamily::custom)
        throw std::invalid_argument("build_initial: custom data goes through build_initial_custom");
    InitialData data;
    data.family = family;
    data.amplitude = amplitude;
    data.v0.resize(N + 1);
    const double h = 1.0 / static_cast<double>(N);
    for (std::size_t i = 0; i <= N; ++i) {
        const double x = static_cast<double>(i) * h;
        if (family == InitialFamily::sin2) {
            const double s = std::sin(kPi * x);
            data.v0[i] = amplitude * s * s;
        } else {
            data.v0[i] = 16.0 * amplitude * x * x * (1.0 - x) * (1.0 - x);
        }
    }
    // Both families vanish at the boundary; pin so the stored samples do too.
    data.v0.front() = 0.0;
    data.v0.back() = 0.0;
    data.h0 = -simpson(data.v0, h);
    return data;
}

InitialData build_initial_custom(std::vector<double> v0_samples) {
    const std::size_t nodes = v0_samples.size();
    if (nodes < 129 || (nodes - 1) % 2 != 0)
        throw std::invalid_argument("build_initial_custom: need even N >= 128 (N+1 samples)");
    if (std::abs(v0_samples.front()) > 1e-12 || std::abs(v0_samples.back()) > 1e-12)
        throw std::invalid_argument("build_initial_custom: v0 must vanish at both endpoints");
    InitialData data;
    data.family = InitialFamily::custom;
    data.amplitude = 0.0;
    data.v0 = std::move(v0_samples);
    data.v0.front() = 0.0;
    data.v0.back() = 0.0;
    data.h0 = -simpson(data.v0, 1.0 / static_cast<double>(nodes - 1));
    return data;
}

std::vector<double> reconstruct_u(const SolutionState& state) {
    const std::size_t nodes = state.v.size();
    const double h = 1.0 / static_cast<double>(nodes - 1);
    std::vector<double> u(nodes);
    cumulative_integral(state.v, h, u);
    const double total = u.back();
    for (double& x : u) x -= total;  // u(x) = -int_x^1 v; u[N] = 0 exactly
    return u;
}

std::vector<double> rhs(const SolutionState& state, const ProblemParams& params,
                        const DampingProfile& profile) {
    const std::size_t n = state.v.size() - 1;
    const double h = 1.0 / static_cast<double>(n);
    const std::vector<double> u = reconstruct_u(state);
    std::vector<double> vx(state.v.size());
    derivative4(state.v, h, vx);
    const double a = profile.alpha(state.t);
    const double q = 0.5 * (params.beta - 1.0);
    std::vector<double> out(state.v.size());
    out[0] = 0.0;
    out[n] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        out[i] = -(u[i] * vx[i] + q * state.v[i] * state.v[i] + a * state.v[i]);
    }
    return out;
}

CompatibilityReport compatibility_check(const InitialData& initial) {
    CompatibilityReport rep;
    SolutionState s{0.0, initial.v0};
    const std::vector<double> u = reconstruct_u(s);
    const std::size_t n = initial.v0.size() - 1;
    std::vector<double> vx(initial.v0.size());
    derivative4(initial.v0, 1.0 / static_cast<double>(n), vx);
    rep.u0_at_1 = u[n];
    rep.v0_at_0 = initial.v0[0];
    rep.v0_at_1 = initial.v0[n];
    rep.omega0_at_0 = vx[0];
    rep.omega_warning = std::abs(rep.omega0_at_0) > 1e-4 * std::max(1.0, max_abs(initial.v0));
    return rep;
}

double omega_residual(const SolutionState& before, const SolutionState& after,
                      const ProblemParams& params, const DampingProfile& profile) {
    if (before.v.size() != after.v.size())
        throw std::invalid_argument("omega_residual: mismatched grids");
    if (!(after.t > before.t)) throw std::invalid_argument("omega_residual: states must be ordered in time");
    const std::size_t n = before.v.size() - 1;
    const double h = 1.0 / static_cast<double>(n);

    auto transport_terms = [&](const SolutionState& s, std::vector<double>& omega,
                               std::vector<double>& terms) {
        const std::vector<double> u = reconstruct_u(s);
        omega.resize(s.v.size());
        second_difference(u, h, omega);
        std::vector<double> omega_x(s.v.size());
        derivative4(omega, h, omega_x);
        const double a = profile.alpha(s.t);
        terms.resize(s.v.size());
        for (std::size_t i = 0; i <= n; ++i) {
            terms[i] = u[i] * omega_x[i] + params.beta * omega[i] * s.v[i] + a * omega[i];
        }
    };

    std::vector<double> w1, w2, f1, f2;
    transport_terms(before, w1, f1);
    transport_terms(after, w2, f2);
    const double idt = 1.0 / (after.t - before.t);
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 <= n; ++i) {
        const double r = (w2[i] - w1[i]) * idt + 0.5 * (f1[i] + f2[i]);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

Simulation::Simulation(InitialData initial, ProblemParams params, DampingProfile profile,
                       SolverConfig config)
    : initial_(std::move(initial)),
      params_(params),
      profile_(std::move(profile)),
      config_(config) {
    config_.validate();
    if (initial_.v0.size() != config_.N + 1)
        throw std::invalid_argument("Simulation: initial data does not match grid size N");
    state_.t = 0.0;
    state_.v = initial_.v0;
    dx_ = 1.0 / static_cast<double>(config_.N);
    u_buf_.resize(config_.N + 1);
    vx_buf_.resize(config_.N + 1);
}

std::vector<double> Simulation::eval_rhs(double t, const std::vector<double>& v) const {
    const std::size_t n = config_.N;
    cumulative_integral(v, dx_, u_buf_);
    const double total = u_buf_[n];
    for (double& x : u_buf_) x -= total;
    derivative4(v, dx_, vx_buf_);
    const double a = profile_.alpha(t);
    const double q = 0.5 * (params_.beta - 1.0);
    std::vector<double> out(n + 1);
    out[0] = 0.0;
    out[n] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        out[i] = -(u_buf_[i] * vx_buf_[i] + q * v[i] * v[i] + a * v[i]);
    }
    return out;
}

double Simulation::propose_dt() const {
    const std::size_t n = config_.N;
    cumulative_integral(state_.v, dx_, u_buf_);
    const double total = u_buf_[n];
    double umax = 0.0;
    for (double x : u_buf_) umax = std::max(umax, std::abs(x - total));
    const double vmax = max_abs(state_.v);

    double dt = dt_next_ > 0.0 ? dt_next_ : std::numeric_limits<double>::infinity();
    if (umax > 0.0) dt = std::min(dt, config_.cfl * dx_ / umax);
    if (vmax > 0.0) dt = std::min(dt, config_.safety / vmax);
    const double remaining = config_.t_end - state_.t;
    if (!std::isfinite(dt)) dt = remaining;  // quiescent state: jump to the horizon
    return std::min(dt, remaining);
}

StepStatus Simulation::step() {
    const std::size_t n = config_.N;
    double dt = propose_dt();
    std::vector<double> k[rk45::kStages];
    std::vector<double> y(n + 1), vnew(n + 1);
    const double vref = std::max(1.0, max_abs(state_.v));

    while (true) {
        if (dt < config_.dt_min) {
            dt_collapsed_ = true;
            return StepStatus::dt_collapse;
        }
        for (int s = 0; s < rk45::kStages; ++s) {
            y = state_.v;
            for (int j = 0; j < s; ++j) {
                const double a = dt * rk45::kA[s][j];
                const std::vector<double>& kj = k[j];
                for (std::size_t i = 1; i < n; ++i) y[i] += a * kj[i];
            }
            y[0] = 0.0;
            y[n] = 0.0;
            k[s] = eval_rhs(state_.t + rk45::kC[s] * dt, y);
        }
        double err_norm = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i <= n; ++i) {
            double acc = 0.0, eacc = 0.0;
            for (int s = 0; s < rk45::kStages; ++s) {
                acc += rk45::kB[s] * k[s][i];
                eacc += rk45::kE[s] * k[s][i];
            }
            vnew[i] = state_.v[i] + dt * acc;
            const double err = std::abs(dt * eacc);
            const double scale =
                config_.rk_tol * (1e-2 * vref + std::max(std::abs(state_.v[i]), std::abs(vnew[i])));
            if (!std::isfinite(vnew[i]) || !std::isfinite(err)) {
                finite = false;
                break;
            }
            err_norm = std::max(err_norm, err / scale);
        }
        if (!finite) {
            ++rejected_;
            dt *= 0.25;
            continue;
        }
        if (err_norm <= 1.0) {
            vnew[0] = 0.0;
            vnew[n] = 0.0;
            state_.v.swap(vnew);
            state_.t += dt;
            last_dt_ = dt;
            last_err_ = err_norm;
            ++accepted_;
            const double grow = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
            dt_next_ = dt * std::clamp(grow, 0.2, 5.0);
            return StepStatus::ok;
        }
        ++rejected_;
        dt *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.1, 0.9);
    }
}

TimeSeriesRecord Simulation::make_record(double dt_used) const {
    const std::size_t n = config_.N;
    TimeSeriesRecord rec;
    rec.t = state_.t;
    rec.dt = dt_used;
    cumulative_integral(state_.v, dx_, u_buf_);
    const double total = u_buf_[n];
    double umin = std::numeric_limits<double>::infinity();
    for (double x : u_buf_) umin = std::min(umin, x - total);
    rec.H = u_buf_[0] - total;  // u(0) = -Simpson(v)
    rec.min_u = umin;
    rec.max_v = max_abs(state_.v);
    std::vector<double>& sq = vx_buf_;  // reuse scratch
    for (std::size_t i = 0; i <= n; ++i) sq[i] = state_.v[i] * state_.v[i];
    rec.l2vsq = simpson(sq, dx_);
    for (std::size_t i = 0; i <= n; ++i) sq[i] *= state_.v[i];
    rec.intv3 = simpson(sq, dx_);
    rec.eq8_residual = std::numeric_limits<double>::quiet_NaN();
    return rec;
}

RunResult Simulation::run() {
    RunResult result;
    result.prev = state_;
    result.series.push_back(make_record(0.0));
    while (true) {
        const SolutionState snapshot = state_;
        const StepStatus status = step();
        if (status == StepStatus::dt_collapse) {
            result.event.detected = true;
            result.event.reason = BreakdownReason::dt_collapse;
            result.event.t_detect = state_.t;
            break;
        }
        result.prev = snapshot;
        result.series.push_back(make_record(last_dt_));
        const double vmax = result.series.back().max_v;
        if (vmax > config_.v_max) {
            result.event.detected = true;
            result.event.reason = BreakdownReason::v_max_exceeded;
            result.event.t_detect = state_.t;
            break;
        }
        if (state_.t >= config_.t_end - config_.dt_min || accepted_ >= kMaxSteps) {
            result.event.detected = false;
            result.event.reason = BreakdownReason::horizon_reached;
            result.event.t_detect = state_.t;
            break;
        }
    }
    result.last = state_;
    result.event.max_v = 0.0;
    for (const auto& rec : result.series) result.event.max_v = std::max(result.event.max_v, rec.max_v);
    if (result.event.detected) {
        // Extrapolate the escape time from the tail of 1/max_v, which
        // vanishes linearly at a Riccati-type blowup.
        std::vector<std::pair<double, double>> tail;
        const std::size_t m = result.series.size();
        for (std::size_t i = m > 10 ? m - 10 : 0; i < m; ++i) {
            if (result.series[i].max_v > 0.0)
                tail.emplace_back(result.series[i].t, 1.0 / result.series[i].max_v);
        }
        if (const auto cross = fit_zero_crossing(tail)) {
            result.event.t_extrapolated = std::max(*cross, result.event.t_detect);
        }
    }
    result.steps_accepted = accepted_;
    result.steps_rejected = rejected_;
    return result;
}

}  // namespace pjlab
