#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace bcirc {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default truncation order for series-backed computations.
inline constexpr int kDefaultOrder = 32;

/// Constant-term tolerance for series division and logarithm.
inline constexpr double kDivisionTol = 1e-14;

/// Tolerance on the constant term when removing the z-factor of a series.
inline constexpr double kShiftDownTol = 1e-12;

/// Reduce an angle into [0, 2*pi). Values within 1e-12 of 2*pi snap to 0.
inline double canonical_angle(double t) {
    double r = std::fmod(t, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (kTwoPi - r < 1e-12) r = 0.0;
    return r == 0.0 ? 0.0 : r;  // drop the sign of -0.0
}

/// Distance between two angles on the circle, in [0, pi].
inline double angle_distance(double a, double b) {
    double d = std::fmod(std::fabs(a - b), kTwoPi);
    return d > std::numbers::pi ? kTwoPi - d : d;
}

}  // namespace bcirc
