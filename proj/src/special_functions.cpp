#include "pjlab/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pjlab {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

// Series E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!),
// accurate for x <= 1.
double e1_series(double x) {
    double sum = 0.0;
    double term = 1.0;  // x^k / k!
    for (int k = 1; k <= 60; ++k) {
        term *= x / k;
        const double del = (k % 2 == 1 ? term : -term) / k;
        sum += del;
        if (std::abs(del) < 1e-18 * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// Modified Lentz evaluation of the continued fraction
//   exp(x) E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- 9/(...)))),
// valid for x > 1.
double e1_cf_scaled(double x) {
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0;
    double c = 1.0 / std::numeric_limits<double>::min();
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 20000; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        d = 1.0 / d;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= 1e-16) break;
    }
    return h;
}

}  // namespace

double e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("e1: requires x > 0");
    if (x <= 1.0) return e1_series(x);
    if (x > 745.0) return 0.0;  // exp(-x) subnormal; integral below representable range
    return e1_cf_scaled(x) * std::exp(-x);
}

double e1_scaled(double x) {
    if (!(x > 0.0)) throw std::domain_error("e1_scaled: requires x > 0");
    if (x <= 1.0) return std::exp(x) * e1_series(x);
    return e1_cf_scaled(x);
}

double eta(double t, double c) {
    if (!(c > 0.0)) throw std::domain_error("eta: requires c > 0");
    if (t < 0.0) throw std::domain_error("eta: requires t >= 0");
    if (t == 0.0) return 0.0;
    const double lower = e1(1.0 / c);
    const double ct = c * t;
    // Upper limit exp(ct)/c; once ct passes ~700 the E1 value there is
    // far below the subnormal range and the integral has saturated.
    if (ct > 700.0) return lower;
    return lower - e1(std::exp(ct) / c);
}

double eta_scaled(double t, double c) {
    if (!(c > 0.0)) throw std::domain_error("eta_scaled: requires c > 0");
    if (t < 0.0) throw std::domain_error("eta_scaled: requires t >= 0");
    if (t == 0.0) return 0.0;
    const double lower = e1_scaled(1.0 / c);
    const double ct = c * t;
    if (ct > 700.0) return lower;
    // exp(1/c) E1(y) = exp(1/c - y) * e1_scaled(y) with y = exp(ct)/c >= 1/c,
    // so the prefactor exponent (1 - exp(ct))/c = -expm1(ct)/c is <= 0.
    const double y = std::exp(ct) / c;
    const double upper = std::exp(-std::expm1(ct) / c) * e1_scaled(y);
    return lower - upper;
}

}  // namespace pjlab
