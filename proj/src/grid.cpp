#include "pjlab/grid.hpp"

#include <cassert>
#include <stdexcept>

namespace pjlab {

double simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size() - 1;
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("simpson: need an even interval count");
    double acc = 0.0;
    for (std::size_t i = 0; i + 2 <= n; i += 2) {
        acc += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    }
    return acc;
}

void cumulative_integral(std::span<const double> f, double h, std::span<double> out) {
    const std::size_t n = f.size() - 1;
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("cumulative_integral: need an even interval count");
    assert(out.size() == f.size());
    out[0] = 0.0;
    for (std::size_t i = 0; i + 2 <= n; i += 2) {
        // Parabola through (f_i, f_{i+1}, f_{i+2}): half-panel then full panel.
        out[i + 1] = out[i] + h / 12.0 * (5.0 * f[i] + 8.0 * f[i + 1] - f[i + 2]);
        out[i + 2] = out[i] + h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    }
}

void derivative4(std::span<const double> f, double h, std::span<double> out) {
    const std::size_t n = f.size() - 1;
    if (n < 4) throw std::invalid_argument("derivative4: need at least 5 nodes");
    assert(out.size() == f.size());
    const double s = 1.0 / (12.0 * h);
    out[0] = s * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    out[1] = s * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    for (std::size_t i = 2; i + 2 <= n; ++i) {
        out[i] = s * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
    }
    out[n - 1] = s * (3.0 * f[n] + 10.0 * f[n - 1] - 18.0 * f[n - 2] + 6.0 * f[n - 3] - f[n - 4]);
    out[n] = s * (25.0 * f[n] - 48.0 * f[n - 1] + 36.0 * f[n - 2] - 16.0 * f[n - 3] + 3.0 * f[n - 4]);
}

void second_difference(std::span<const double> f, double h, std::span<double> out) {
    const std::size_t n = f.size() - 1;
    if (n < 3) throw std::invalid_argument("second_difference: need at least 4 nodes");
    assert(out.size() == f.size());
    const double s = 1.0 / (h * h);
    out[0] = s * (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]);
    for (std::size_t i = 1; i < n; ++i) {
        out[i] = s * (f[i - 1] - 2.0 * f[i] + f[i + 1]);
    }
    out[n] = s * (2.0 * f[n] - 5.0 * f[n - 1] + 4.0 * f[n - 2] - f[n - 3]);
}

}  // namespace pjlab
