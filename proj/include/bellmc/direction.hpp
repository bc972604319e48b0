// direction.hpp
// Unit vectors on the Bloch sphere, plus the little 3-vector algebra the
// samplers and correlators need.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellmc {

// Squared norm must stay within this of 1 for a direction to count as unit.
inline constexpr double kUnitNormTolerance = 1e-12;

struct Direction {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    // Polar angle from +z, in [0, pi].
    double theta() const { return std::acos(std::clamp(z, -1.0, 1.0)); }
    // Azimuth in (-pi, pi]; 0 for the degenerate x = y = 0 case.
    double phi() const { return std::atan2(y, x); }
};

inline constexpr Direction kDirX{1.0, 0.0, 0.0};
inline constexpr Direction kDirY{0.0, 1.0, 0.0};
inline constexpr Direction kDirZ{0.0, 0.0, 1.0};

inline double dot(const Direction& a, const Direction& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Direction cross(const Direction& a, const Direction& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

inline double squared_norm(const Direction& d) { return dot(d, d); }

inline bool is_unit(const Direction& d, double tol = kUnitNormTolerance) {
    return std::abs(squared_norm(d) - 1.0) <= tol;
}

inline Direction scaled(const Direction& d, double s) {
    return {d.x * s, d.y * s, d.z * s};
}

inline Direction normalized(const Direction& d) {
    const double n2 = squared_norm(d);
    if (n2 <= 0.0) throw std::domain_error("cannot normalize a zero vector");
    return scaled(d, 1.0 / std::sqrt(n2));
}

}  // namespace bellmc
