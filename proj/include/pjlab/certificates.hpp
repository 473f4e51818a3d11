#pragma once

#include <optional>
#include <string>

#include "pjlab/damping.hpp"

namespace pjlab {

enum class TheoremId { yuen_2_1, bounded_3_1, unbounded_4_1, riccati_numeric };

std::string theorem_id_name(TheoremId id);

// Outcome of evaluating one blowup condition for initial datum
// H0 = u0(0). `applicable` means the condition holds strictly and a
// blowup-time bound t_star exists; inapplicable certificates carry no
// claim at all (the opposite regime is an open problem).
struct BlowupCertificate {
    TheoremId theorem_id;
    bool applicable = false;
    double h0 = 0.0;
    double threshold = 0.0;  // condition RHS: blowup guaranteed for h0 < threshold
    std::optional<double> t_star;
    int n = 2;
    std::optional<double> M;
    std::optional<double> c;
    bool sup_caveat = false;  // set when M came from a tabulated profile's knot range
    std::string notes;

    // Flat JSON with keys theorem_id, applicable, h0, threshold, t_star, params.
    std::string to_json() const;
};

// Undamped case, n = 2: blowup on or before 1/(2 U0) for U0 = -u0(0) > 0.
BlowupCertificate certify_yuen(double u0_at_0);

// Bounded damping, sup alpha = M: blowup for h0 < M(1-n)/n with
// t_star = -(1/M) log(1 - M(1-n)/(n h0)).
BlowupCertificate certify_bounded(double h0, double M, int n);

// Exponential damping alpha = e^{ct}: blowup for
// h0 < -c(n-1)/(n e^{1/c} E1(1/c)); t_star is the root of
// 1 + h0 phi(n) eta(t) = 0, evaluated through the scaled-E1 path so no
// e^{1/c} factor is ever formed directly.
BlowupCertificate certify_unbounded(double h0, double c, int n);

// Residual 1 + h0 phi(n) eta(t), the function whose root defines the
// unbounded-damping t_star. Exposed for verification.
double unbounded_root_residual(double h0, double c, int n, double t);

struct ComparisonContext {
    int n = 2;
    double h0 = -1.0;  // must be < 0
    DampingProfile profile;
};

// g(t) = (n/(n-1)) int_0^t exp(-int_0^s alpha) ds, by adaptive
// quadrature over the profile's exact alpha integral. g(0) = 0 and g is
// strictly increasing.
double g_of(const ComparisonContext& ctx, double t);

// Lambda(t) = n N(t) / ((n-1)^2 M h0 g'(t)) for the constant-M
// comparison, with N(t) = M(n-1) + n h0 (1 - e^{-Mt}) and
// g'(t) = (n/(n-1)) e^{-Mt}. Lambda(0) = 1/h0, rises to 0 at t_star.
// Throws if the bounded-damping condition fails (N never reaches 0).
double lambda_of(double h0, double M, int n, double t);

struct RiccatiOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double blowup_threshold = 1e12;  // |h| beyond this counts as blown up
    double dt_min = 1e-14;
    double t_max = 50.0;  // horizon for "no blowup detected"
    int fit_points = 10;  // accepted steps used in the 1/h zero extrapolation
};

struct RiccatiResult {
    bool blowup = false;
    double t_blowup = 0.0;      // extrapolated zero of 1/h when blowup = true
    double t_last = 0.0;        // last integrated time
    double h_last = 0.0;
    std::string stop_reason;    // "h_threshold", "dt_collapse", "horizon", "decay"
};

// Integrates the comparison ODE h' = -alpha(t) h - (n/(n-1)) h^2,
// h(0) = h0 < 0, with an adaptive embedded Runge-Kutta pair. Blowup is
// declared when |h| crosses blowup_threshold (or the step collapses
// while |h| is already large); the reported time is the extrapolated
// zero of 1/h from a linear fit over the last accepted steps.
//
// For profiles with nondecreasing alpha the integration stops early
// with blowup = false as soon as (n/(n-1))|h| < alpha(t): from that
// point |h| decays monotonically, so no escape is possible.
RiccatiResult riccati_blowup_time(const ComparisonContext& ctx, const RiccatiOptions& opts = {});

}  // namespace pjlab
