// sampling.cpp

#include "bellmc/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellmc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Direction sample_direction(RngStream& rng) {
    const double z = 2.0 * rng.uniform01() - 1.0;
    const double phi = kTwoPi * rng.uniform01();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
}

std::pair<Direction, Direction> orthonormal_completion(const Direction& v) {
    // Cross with whichever fixed axis v is farther from.
    const Direction ref = (std::abs(v.z) < 0.9) ? kDirZ : kDirX;
    const Direction e1 = normalized(cross(v, ref));
    const Direction e2 = cross(v, e1);
    return {e1, e2};
}

Direction direction_on_circle(const Direction& axis, double psi) {
    const auto [e1, e2] = orthonormal_completion(axis);
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    return {c * e1.x + s * e2.x, c * e1.y + s * e2.y, c * e1.z + s * e2.z};
}

std::pair<Direction, Direction> sample_orthogonal_pair(RngStream& rng) {
    const Direction first = sample_direction(rng);
    const double psi = kTwoPi * rng.uniform01();
    return {first, direction_on_circle(first, psi)};
}

MeasurementFrame sample_frame(RngStream& rng, int n, SamplingMode mode) {
    if (n < 1) throw std::invalid_argument("frame needs at least one party");
    std::vector<Direction> dirs;
    dirs.reserve(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < n; ++k) {
        if (mode == SamplingMode::Rim) {
            dirs.push_back(sample_direction(rng));
            dirs.push_back(sample_direction(rng));
        } else {
            auto [a, b] = sample_orthogonal_pair(rng);
            dirs.push_back(a);
            dirs.push_back(b);
        }
    }
    return MeasurementFrame(n, std::move(dirs));
}

double schmidt_angle_from_uniform(double u) {
    if (!(u > 0.0 && u <= 1.0))
        throw std::domain_error("schmidt_angle_from_uniform needs u in (0, 1]");
    // F(r) = 8 r^3 on [0, 1/2], so r = u^(1/3) / 2 and theta = acos(2r) / 2.
    const double r = std::cbrt(u) / 2.0;
    return std::acos(2.0 * r) / 2.0;
}

double sample_schmidt_angle(RngStream& rng) {
    return schmidt_angle_from_uniform(rng.uniform_open01());
}

}  // namespace bellmc
