// sampling.hpp
// Random measurement frames and random entangled states.  Every sampler
// consumes a documented number of uniform draws from its RngStream, in a
// fixed order; that budget is what makes runs reproducible.

#pragma once

#include <utility>

#include "bellmc/quantum.hpp"
#include "bellmc/rng.hpp"

namespace bellmc {

enum class SamplingMode {
    Rim,  // both settings of a party drawn independently on the sphere
    Rom,  // second setting drawn uniformly on the circle orthogonal to the first
};

// Uniform direction on the unit sphere.  Consumes 2 draws: z ~ U[-1, 1]
// first, then the azimuth ~ U[0, 2pi).
Direction sample_direction(RngStream& rng);

// Deterministic right-handed orthonormal basis {e1, e2} of the plane
// orthogonal to v.  The construction switches reference axes at |v_z| = 0.9
// to stay well conditioned.  Exposed for tests.
std::pair<Direction, Direction> orthonormal_completion(const Direction& v);

// cos(psi) e1 + sin(psi) e2 for the completion of axis.
Direction direction_on_circle(const Direction& axis, double psi);

// First direction uniform on the sphere, second uniform on its orthogonal
// great circle.  Consumes 3 draws (2 for the direction, then psi).
std::pair<Direction, Direction> sample_orthogonal_pair(RngStream& rng);

// Frame for n parties.  Party order is part of the draw-order contract:
// party 0 draws all of its settings before party 1 starts, and so on.
// RIM consumes 4n draws per frame, ROM 3n.
MeasurementFrame sample_frame(RngStream& rng, int n, SamplingMode mode);

// Schmidt angle from the inverse CDF; exposed for tests.  u must lie in
// (0, 1].
double schmidt_angle_from_uniform(double u);

// Schmidt angle of a random pure two-qubit state under the Hilbert-Schmidt
// measure, i.e. the density of r = cos(2 theta)/2 is 24 r^2 on [0, 1/2].
// Consumes 1 draw.
double sample_schmidt_angle(RngStream& rng);

}  // namespace bellmc
