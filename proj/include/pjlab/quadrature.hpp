#pragma once

#include <cstddef>
#include <functional>

namespace pjlab {

// Tolerances for the adaptive quadrature used inside the library
// (tabulated damping integrals, g(t) evaluation).
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    std::size_t max_subdivisions = 2000;
};

// Adaptive Simpson integration of f over [a, b]. Recursion splits an
// interval until |S(left)+S(right) - S(whole)| passes the local error
// test; max_subdivisions caps the total number of splits.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec = {});

}  // namespace pjlab
