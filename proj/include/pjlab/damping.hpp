#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pjlab {

enum class DampingFamily { zero, constant, saturating, exponential, tabulated };

// Result of sup_{t>=0} alpha(t). `value` is absent for the unbounded
// exponential family and for the undamped zero family; for tabulated
// profiles the sup is only taken over the knot range (caveat flag).
struct SupBound {
    std::optional<double> value;
    bool undamped = false;
    bool unbounded = false;
    bool tabulated_range_only = false;
};

// Time-dependent damping coefficient alpha(t) >= 0 as one of five closed
// families:
//   zero           alpha = 0
//   constant       alpha = M,              M > 0
//   saturating     alpha = M(1 - e^{-rt}), M > 0, r > 0
//   exponential    alpha = e^{ct},         c > 0
//   tabulated      monotone-cubic interpolant of (t_i, alpha_i) knots
//
// Every non-tabulated family has an exact closed-form time integral; the
// tabulated family integrates its piecewise-cubic interpolant segment by
// segment (Simpson per segment, exact for cubics).
class DampingProfile {
  public:
    static DampingProfile zero();
    static DampingProfile constant(double M);
    static DampingProfile saturating(double M, double r);
    static DampingProfile exponential(double c);
    // Knots must be strictly increasing in t with alpha_i >= 0. Outside
    // the knot range alpha is extended as a constant.
    static DampingProfile tabulated(std::vector<double> t, std::vector<double> a);

    DampingFamily family() const { return family_; }

    // Pointwise alpha(t), t >= 0.
    double alpha(double t) const;

    // int_0^t alpha(s) ds, t >= 0. Nondecreasing in t.
    double integral(double t) const;

    SupBound sup_bound() const;

    // alpha'(0); throws for tabulated profiles.
    double derivative_at_zero() const;

    // Family parameters (meaning depends on family()).
    double param_M() const { return M_; }
    double param_r() const { return r_; }
    double param_c() const { return c_; }

    // Round-trippable literal: zero | const:M | sat:M,r | exp:c | tab:path
    std::string to_literal() const;

  private:
    DampingProfile() = default;

    DampingFamily family_ = DampingFamily::zero;
    double M_ = 0.0;
    double r_ = 0.0;
    double c_ = 0.0;

    // Tabulated representation: knots plus per-segment cubic
    // coefficients a + b s + c s^2 + d s^3, s = t - t_i.
    std::vector<double> knot_t_;
    std::vector<double> knot_a_;
    std::vector<double> seg_b_, seg_c_, seg_d_;
    std::string source_path_;

    void build_pchip();
    friend DampingProfile parse_damping(const std::string& literal);
};

// Parses a profile literal: `zero`, `const:M`, `sat:M,r`, `exp:c`, or
// `tab:path.csv` (two-column CSV t,alpha). Throws std::invalid_argument
// on malformed input.
DampingProfile parse_damping(const std::string& literal);

}  // namespace pjlab
