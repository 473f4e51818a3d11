#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pjlab/damping.hpp"
#include "pjlab/solver.hpp"
#include "pjlab/timeseries.hpp"

namespace pjlab {

// Residual of H'(t) + alpha(t) H(t) + (n/(n-1)) ||u_x||_2^2 = 0 along the
// recorded trajectory, written into each record's eq8_residual field.
// dH/dt uses a 3-point Lagrange derivative on the nonuniform accepted-step
// times; the residual is normalized by max(1, |each term|). Needs at
// least 3 records; with fewer, residuals are left NaN.
void fill_eq8_residuals(TimeSeries& series, const DampingProfile& profile, int n);

// Residual of d/dt ||v||^2 = (2 - beta) int v^3 - 2 alpha ||v||^2, the
// independent energy identity (derived by multiplying the evolved
// equation by v and integrating by parts under the boundary pinning).
std::vector<double> energy_identity_residuals(const TimeSeries& series,
                                              const ProblemParams& params,
                                              const DampingProfile& profile);

// max(0, H^2 - l2vsq) / max(1, l2vsq).
double cauchy_schwarz_violation(const TimeSeriesRecord& rec);

// max(0, H(t) - h0 exp(-int_0^t alpha)).
double decay_bound_violation(const TimeSeriesRecord& rec, double h0,
                             const DampingProfile& profile);

// Sandwich check 0 >= 1/H >= Lambda(t) - 1e-8 for t < t_star; returns the
// worst of the two violations, 0 when t >= t_star.
double lambda_violation(const TimeSeriesRecord& rec, double h0, double M, int n);

struct MonitorCheck {
    bool enabled = false;
    bool pass = true;
    double worst = 0.0;
    double t_worst = 0.0;
    double tol = 0.0;
};

struct MonitorReport {
    double resolvability_cap = 0.0;
    std::size_t resolved_steps = 0;
    std::size_t under_resolved_steps = 0;
    MonitorCheck cauchy_schwarz;
    MonitorCheck decay_bound;
    MonitorCheck lambda_sandwich;  // enabled only when the bounded condition holds
    MonitorCheck h_negative;
    bool lambda_skipped = false;
    double eq8_max_resolved = 0.0;
    double energy_max_resolved = 0.0;

    bool all_pass() const;
    std::string to_json() const;
};

// Evaluates every monitor over the resolved part of the series (records
// with max|v| below 1e3 times the initial max are "resolved"; the rest
// are reported but excluded from pass/fail).
MonitorReport compute_monitor_report(const TimeSeries& series, double h0,
                                     const ProblemParams& params,
                                     const DampingProfile& profile);

// Largest eq8 (resp. energy) residual over records with max_v <= v_cap.
double max_eq8_residual(const TimeSeries& series, double v_cap);
double max_energy_residual(const TimeSeries& series, const ProblemParams& params,
                           const DampingProfile& profile, double v_cap);

}  // namespace pjlab
