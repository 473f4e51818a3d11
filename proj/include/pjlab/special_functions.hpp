#pragma once

namespace pjlab {

// Exponential integral E1(x) = int_x^inf exp(-t)/t dt, x > 0.
//
// Power-plus-log series for x <= 1, modified Lentz continued fraction
// for x > 1. Relative error <= 1e-12 on [1e-6, 700]; underflows to zero
// for x beyond ~745 where exp(-x) is subnormal.
double e1(double x);

// exp(x) * E1(x), overflow-safe up to x ~ 1e6. Satisfies
// 1/(x+1) < e1_scaled(x) < 1/x for all x > 0.
double e1_scaled(double x);

// eta(t, c) = int_{1/c}^{exp(ct)/c} exp(-u)/u du for t >= 0, c > 0.
// Evaluated as e1(1/c) - e1(exp(ct)/c); eta(0) = 0 and
// eta(t) -> e1(1/c) as t -> inf.
double eta(double t, double c);

// exp(1/c) * eta(t, c), computed without ever forming exp(1/c).
// Needed by the unbounded-damping threshold machinery where 1/c can
// exceed 700.
double eta_scaled(double t, double c);

}  // namespace pjlab
