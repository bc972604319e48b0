// inequalities.hpp
// The MABK family of Bell inequalities, its orbit under local relabelings,
// and the nonlinear WWZB criterion that characterizes the full orbit of the
// linear correlation inequalities.
//
// Coefficient vectors are indexed by the full setting tuple sigma with the
// same bit convention as CorrelationTensor::full (party 0 = MSB, bit 0 for a
// party's first setting).

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bellmc/quantum.hpp"

namespace bellmc {

// Margin added to every violation threshold before a trial counts as
// violating; absorbs rounding in the correlators and transforms.
inline constexpr double kViolationTolerance = 1e-9;

// Local-hidden-variable bound of the n-party MABK inequality, 2^(n - 1/2).
double mabk_classical_bound(int n);

// Quantum maximum of the n-party MABK expression, 2^(3n/2 - 1).
double mabk_quantum_max(int n);

struct MabkCoefficients {
    int n = 0;
    std::vector<double> beta;  // size 2^n
    double classical_bound = 0.0;
    double quantum_max = 0.0;
};

// Coefficients of the standard n-party MABK inequality (n >= 2).  Computed
// once per n and cached; the returned reference stays valid for the program
// lifetime.  For n = 2 this is the CHSH inequality with
// beta = (-sqrt2, sqrt2, sqrt2, sqrt2).
const MabkCoefficients& mabk_coefficients(int n);

// sum_sigma beta(sigma) E(sigma) for a full correlation tensor.
double mabk_value(const MabkCoefficients& coeffs, const CorrelationTensor& t);

// Every coefficient vector reachable from mabk_coefficients(n) by local
// setting swaps, outcome flips, party permutations, and global negation.
// The closure always has exactly 2^(n+1) distinct members (2^n up to an
// overall sign); the function verifies that count and returns them in a
// canonical order: member (s * 2^n + lambda) carries global sign (-1)^s and
// outcome-flip pattern lambda applied in the Fourier domain, so index 0 is
// the input inequality itself.  Memory grows as 4^n; capped at n <= 10.
std::vector<MabkCoefficients> mabk_orbit(int n);

// In-place unnormalized Walsh-Hadamard transform; size must be a power of
// two.  out[k] = sum_s (-1)^popcount(k & s) in[s].
void walsh_hadamard(std::span<double> values);

// Everything the per-trial criteria need, from two Walsh-Hadamard passes
// over the full correlators (O(n 2^n), no orbit materialization):
//   mabk_single      |MABK value| of the standard inequality as given
//   mabk_orbit_best  max |MABK value| over the whole relabeling orbit
//   mabk_orbit_index index lambda of a maximizing orbit member (ties: lowest;
//                    the matching mabk_orbit entries are lambda and
//                    2^n + lambda, which differ only by sign)
//   wwzb_lhs         sum_kappa |Ehat(kappa)|, the WWZB left-hand side
struct CorrelationCriteria {
    double mabk_single = 0.0;
    double mabk_orbit_best = 0.0;
    std::size_t mabk_orbit_index = 0;
    double wwzb_lhs = 0.0;
};

CorrelationCriteria evaluate_criteria(const CorrelationTensor& t);

struct OrbitResult {
    bool violated = false;
    double best_value = 0.0;
    std::size_t best_index = 0;
};

// True when some orbit member exceeds the classical bound (plus tolerance).
OrbitResult mabk_orbit_violated(const CorrelationTensor& t);

struct WwzbResult {
    bool violated = false;
    double lhs = 0.0;
};

// Nonlinear criterion: sum_kappa |Ehat(kappa)| <= 2^n holds for every
// locally causal model; exceeding it (plus tolerance) certifies violation
// of some inequality in the full WWZB correlation family.
WwzbResult wwzb_violated(const CorrelationTensor& t);

}  // namespace bellmc
