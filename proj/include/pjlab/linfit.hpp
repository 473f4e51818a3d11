#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace pjlab {

// Least-squares zero crossing of w(t) from sampled points, requiring a
// rising slope (w approaching 0 from below). Both breakdown-time
// extrapolators fit the tail of 1/|state| this way, since the reciprocal
// vanishes linearly at a Riccati-type escape.
inline std::optional<double> fit_zero_crossing(const std::vector<std::pair<double, double>>& pts) {
    const std::size_t m = pts.size();
    if (m < 2) return std::nullopt;
    double tbar = 0.0, wbar = 0.0;
    for (const auto& [t, w] : pts) {
        tbar += t;
        wbar += w;
    }
    tbar /= static_cast<double>(m);
    wbar /= static_cast<double>(m);
    double stw = 0.0, stt = 0.0;
    for (const auto& [t, w] : pts) {
        stw += (t - tbar) * (w - wbar);
        stt += (t - tbar) * (t - tbar);
    }
    if (stt == 0.0) return std::nullopt;
    const double slope = stw / stt;
    if (slope == 0.0) return std::nullopt;
    return tbar - wbar / slope;
}

}  // namespace pjlab
