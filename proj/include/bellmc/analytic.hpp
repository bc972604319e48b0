// analytic.hpp
// Exact results for the two-party CHSH case, used as oracles for the Monte
// Carlo estimates: the spherical-triangle violation area and the closed-form
// violation probabilities it integrates to.

#pragma once

#include <functional>

namespace bellmc {

// Area (divided by 4 pi) of the set of third-direction choices that violate
// CHSH for a planar configuration parametrized by x in (-1, 1):
//   (sqrt(1 + x) + sqrt(1 - x) - sqrt 2)^2 / sqrt(1 - x^2).
// Throws std::domain_error for |x| >= 1.
double triangle_area(double x);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

// Adaptive Gauss-Kronrod (G7, K15) bisection to an absolute tolerance.
// Throws std::runtime_error if max_subdivisions is exhausted first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double abs_tol,
                                    int max_subdivisions = 2000);

struct RimSingleProbability {
    double closed_form = 0.0;  // (pi - 3) / 2
    double quadrature = 0.0;   // independent numerical evaluation
};

// Probability that random isotropic measurements on a singlet violate the
// one fixed CHSH inequality.  The integral over x is evaluated after the
// substitution x = sin t, which removes the endpoint singularity of
// triangle_area exactly; the closed form and the quadrature must agree to
// 1e-9 or the function throws std::logic_error.
RimSingleProbability chsh_rim_single_probability();

// Same probability for the full CHSH orbit: as the relabelings partition the
// sphere into four congruent copies of the single-inequality region, this is
// 4 * (pi - 3) / 2 = 2 (pi - 3).
double chsh_rim_orbit_probability();

}  // namespace bellmc
