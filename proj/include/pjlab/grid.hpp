#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pjlab {

// Quadrature and difference stencils on the uniform grid x_i = i*h,
// i = 0..N, h = 1/N. N must be even for the Simpson rules.

// Composite Simpson of the nodal values, sequential panel sum.
double simpson(std::span<const double> f, double h);

// Cumulative integral I_i = int_0^{x_i} f. Even nodes accumulate the
// same Simpson panels as simpson(); odd nodes integrate the panel's
// parabola over its left half, so the whole rule is 4th order and
// I_N equals the composite Simpson total.
void cumulative_integral(std::span<const double> f, double h, std::span<double> out);

// First derivative, 4th order: central stencil in the interior,
// one-sided 5-point stencils at the first/last two nodes.
void derivative4(std::span<const double> f, double h, std::span<double> out);

// Second difference (u_{i-1} - 2u_i + u_{i+1})/h^2 at interior nodes;
// one-sided 2nd-order stencils at the ends.
void second_difference(std::span<const double> f, double h, std::span<double> out);

}  // namespace pjlab
