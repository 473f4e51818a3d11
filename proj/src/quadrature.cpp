#include "pjlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace pjlab {

namespace {

struct SimpsonWork {
    const std::function<double(double)>& f;
    const QuadratureSpec& spec;
    std::size_t splits = 0;
};

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double recurse(SimpsonWork& w, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = w.f(lm);
    const double frm = w.f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (depth > 0 && std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (w.splits >= w.spec.max_subdivisions || depth > 60) {
        return left + right + delta / 15.0;
    }
    ++w.splits;
    return recurse(w, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(w, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec) {
    if (spec.abs_tol <= 0.0 || spec.rel_tol <= 0.0 || spec.max_subdivisions < 1) {
        throw std::domain_error("adaptive_simpson: invalid QuadratureSpec");
    }
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, a, b);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(whole));
    SimpsonWork w{f, spec};
    return recurse(w, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace pjlab
