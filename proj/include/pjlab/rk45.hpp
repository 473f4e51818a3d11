#pragma once

namespace pjlab::rk45 {

// Dormand-Prince 5(4) tableau. The b row gives the 5th-order solution;
// e = b5 - b4 weights the embedded error estimate.
inline constexpr int kStages = 7;

inline constexpr double kC[kStages] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};

inline constexpr double kA[kStages][kStages] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};

inline constexpr double kB[kStages] = {35.0 / 384,      0.0,        500.0 / 1113, 125.0 / 192,
                                       -2187.0 / 6784, 11.0 / 84,  0.0};

inline constexpr double kE[kStages] = {
    71.0 / 57600,  0.0,        -71.0 / 16695, 71.0 / 1920,
    -17253.0 / 339200, 22.0 / 525, -1.0 / 40,
};

}  // namespace pjlab::rk45
