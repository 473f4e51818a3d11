#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pjlab/damping.hpp"
#include "pjlab/timeseries.hpp"

namespace pjlab {

// Dimension parameter n >= 2 and the derived quadratic coefficient
// beta = (n-3)/(n-1) in [-1, 1).
struct ProblemParams {
    int n = 2;
    double beta = -1.0;

    static ProblemParams from_n(int n);
};

enum class InitialFamily { sin2, poly_bump, custom };

InitialFamily parse_initial_family(const std::string& name);
std::string initial_family_name(InitialFamily f);

// Initial slope profile v0 = u0_x sampled on the grid, with
// h0 = -int_0^1 v0 = u0(0) computed by composite Simpson. Families:
//   sin2       v0(x) = A sin^2(pi x)        (h0 = -A/2)
//   poly_bump  v0(x) = 16 A x^2 (1-x)^2     (h0 = -8A/15)
//   custom     caller-supplied samples; endpoints must vanish
struct InitialData {
    InitialFamily family = InitialFamily::sin2;
    double amplitude = 1.0;
    std::vector<double> v0;
    double h0 = 0.0;
};

struct SolutionState {
    double t = 0.0;
    std::vector<double> v;  // u_x at the N+1 nodes; v[0] = v[N] = 0
};

struct SolverConfig {
    std::size_t N = 512;    // grid intervals; power of two >= 128
    double cfl = 0.5;       // convective step fraction, in (0, 1]
    double dt_min = 1e-12;
    double v_max = 1e6;     // breakdown threshold on max|v|
    double t_end = 2.0;
    double rk_tol = 1e-8;   // embedded-pair relative tolerance
    double safety = 0.1;    // reaction limit dt <= safety/max|v|

    void validate() const;  // throws std::invalid_argument on bad fields
};

enum class BreakdownReason { v_max_exceeded, dt_collapse, horizon_reached };

std::string breakdown_reason_name(BreakdownReason r);

struct BreakdownEvent {
    bool detected = false;
    double t_detect = 0.0;
    BreakdownReason reason = BreakdownReason::horizon_reached;
    double max_v = 0.0;
    std::optional<double> t_extrapolated;  // linear-fit zero of 1/max_v
};

struct CompatibilityReport {
    double u0_at_1 = 0.0;
    double v0_at_0 = 0.0;
    double v0_at_1 = 0.0;
    double omega0_at_0 = 0.0;  // v0_x(0), discrete
    bool omega_warning = false;
};

InitialData build_initial(InitialFamily family, double amplitude, std::size_t N);
InitialData build_initial_custom(std::vector<double> v0_samples);

// u(x) = -int_x^1 v via the cumulative 4th-order rule; u[N] = 0 exactly
// and u[0] = -Simpson(v) = H(t).
std::vector<double> reconstruct_u(const SolutionState& state);

// Time derivative of v from the once-integrated equation
//   v_t = -(u v_x + ((beta-1)/2) v^2 + alpha(t) v),
// with endpoint derivatives pinned to zero.
std::vector<double> rhs(const SolutionState& state, const ProblemParams& params,
                        const DampingProfile& profile);

CompatibilityReport compatibility_check(const InitialData& initial);

// Max-norm residual of the vorticity transport form
//   w_t + u w_x + beta w u_x + alpha w = 0,  w = u_xx,
// across two temporally adjacent states (w from second differences of
// the reconstructed u). A cross-formulation consistency diagnostic.
double omega_residual(const SolutionState& before, const SolutionState& after,
                      const ProblemParams& params, const DampingProfile& profile);

struct RunResult {
    TimeSeries series;
    BreakdownEvent event;
    SolutionState last;  // final accepted state
    SolutionState prev;  // state one accepted step earlier
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
};

enum class StepStatus { ok, dt_collapse };

// One run of the method-of-lines integrator. Owns its state and
// workspace; runs are independent and bitwise reproducible.
class Simulation {
  public:
    Simulation(InitialData initial, ProblemParams params, DampingProfile profile,
               SolverConfig config);

    const SolutionState& state() const { return state_; }
    const InitialData& initial() const { return initial_; }

    // One adaptive embedded Runge-Kutta step. dt is limited by the
    // convective CFL on max|u|, the reaction limit safety/max|v|, and
    // the embedded error controller.
    StepStatus step();

    double last_dt() const { return last_dt_; }
    double last_error_estimate() const { return last_err_; }

    // Integrates until max|v| crosses v_max, the step collapses, or
    // t_end is reached, recording one TimeSeriesRecord per accepted step.
    RunResult run();

  private:
    std::vector<double> eval_rhs(double t, const std::vector<double>& v) const;
    double propose_dt() const;
    TimeSeriesRecord make_record(double dt_used) const;

    InitialData initial_;
    ProblemParams params_;
    DampingProfile profile_;
    SolverConfig config_;
    SolutionState state_;
    double dx_;
    double dt_next_ = 0.0;
    double last_dt_ = 0.0;
    double last_err_ = 0.0;
    std::size_t accepted_ = 0;
    std::size_t rejected_ = 0;
    bool dt_collapsed_ = false;

    mutable std::vector<double> u_buf_, vx_buf_;
};

}  // namespace pjlab
