// inequalities.cpp
// MABK coefficients and orbit, WWZB criterion, Walsh-Hadamard machinery.

#include "bellmc/inequalities.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

namespace bellmc {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr int kMaxOrbitParties = 10;

// Fourier-side sign of the standard MABK inequality: the coefficient on
// Ehat(kappa) is eps(popcount kappa) / sqrt2, with eps following the period-4
// pattern +,-,-,+ in the popcount.  Equivalently cos(pi/4 * (1 + 2w)) up to
// the 1/sqrt2 scale.
int mabk_fourier_sign(int popcount) {
    switch (popcount & 3) {
        case 0:
        case 3:
            return 1;
        default:
            return -1;
    }
}

void check_mabk_n(int n) {
    if (n < 2) throw std::invalid_argument("MABK inequalities need n >= 2");
    if (n > kDefaultMaxParties)
        throw std::length_error("MABK party count exceeds configured maximum");
}

// Unnormalized Walsh-Hadamard butterflies over integer vectors.  Exact, so
// orbit members can be deduplicated by equality instead of tolerance.
void walsh_hadamard_int(std::vector<std::int64_t>& v) {
    for (std::size_t len = 1; len < v.size(); len <<= 1)
        for (std::size_t base = 0; base < v.size(); base += 2 * len)
            for (std::size_t i = base; i < base + len; ++i) {
                const std::int64_t a = v[i];
                const std::int64_t b = v[i + len];
                v[i] = a + b;
                v[i + len] = a - b;
            }
}

// Integer representation of the standard MABK coefficients: beta * sqrt2.
std::vector<std::int64_t> mabk_scaled_int(int n) {
    std::vector<std::int64_t> v(std::size_t{1} << n);
    for (std::size_t kappa = 0; kappa < v.size(); ++kappa)
        v[kappa] = mabk_fourier_sign(std::popcount(kappa));
    walsh_hadamard_int(v);
    return v;
}

std::vector<double> scale_to_beta(const std::vector<std::int64_t>& v) {
    std::vector<double> beta(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        beta[i] = static_cast<double>(v[i]) * kInvSqrt2;
    return beta;
}

}  // namespace

double mabk_classical_bound(int n) { return std::exp2(n - 0.5); }

double mabk_quantum_max(int n) { return std::exp2(1.5 * n - 1.0); }

const MabkCoefficients& mabk_coefficients(int n) {
    check_mabk_n(n);
    static std::mutex mu;
    static std::map<int, MabkCoefficients> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        MabkCoefficients c;
        c.n = n;
        c.beta = scale_to_beta(mabk_scaled_int(n));
        c.classical_bound = mabk_classical_bound(n);
        c.quantum_max = mabk_quantum_max(n);
        it = cache.emplace(n, std::move(c)).first;
    }
    return it->second;
}

double mabk_value(const MabkCoefficients& coeffs, const CorrelationTensor& t) {
    if (t.full.size() != coeffs.beta.size())
        throw std::invalid_argument("coefficient and tensor sizes do not match");
    double acc = 0.0;
    for (std::size_t i = 0; i < t.full.size(); ++i) acc += coeffs.beta[i] * t.full[i];
    return acc;
}

std::vector<MabkCoefficients> mabk_orbit(int n) {
    check_mabk_n(n);
    if (n > kMaxOrbitParties)
        throw std::length_error("explicit MABK orbit capped at n <= 10");
    const std::size_t dim = std::size_t{1} << n;

    // Breadth-first closure under the local relabeling generators, on the
    // exact integer representation.
    using IntVec = std::vector<std::int64_t>;
    std::set<IntVec> seen;
    std::vector<IntVec> frontier{mabk_scaled_int(n)};
    seen.insert(frontier.front());
    auto visit = [&](IntVec&& v, std::vector<IntVec>& next) {
        if (seen.insert(v).second) next.push_back(std::move(v));
    };
    while (!frontier.empty()) {
        std::vector<IntVec> next;
        for (const IntVec& v : frontier) {
            for (int k = 0; k < n; ++k) {
                const std::size_t bit = std::size_t{1} << (n - 1 - k);
                // Swap the two settings of party k.
                IntVec swapped(dim);
                for (std::size_t s = 0; s < dim; ++s) swapped[s] = v[s ^ bit];
                visit(std::move(swapped), next);
                // Flip the outcome sign of one setting of party k.
                for (std::size_t setting_mask : {std::size_t{0}, bit}) {
                    IntVec flipped(dim);
                    for (std::size_t s = 0; s < dim; ++s)
                        flipped[s] = ((s & bit) == setting_mask) ? -v[s] : v[s];
                    visit(std::move(flipped), next);
                }
            }
            for (int k = 0; k + 1 < n; ++k) {
                // Exchange parties k and k+1.
                const std::size_t hi = std::size_t{1} << (n - 1 - k);
                const std::size_t lo = hi >> 1;
                IntVec permuted(dim);
                for (std::size_t s = 0; s < dim; ++s) {
                    std::size_t t2 = s & ~(hi | lo);
                    if (s & hi) t2 |= lo;
                    if (s & lo) t2 |= hi;
                    permuted[t2] = v[s];
                }
                visit(std::move(permuted), next);
            }
            IntVec negated(dim);
            for (std::size_t s = 0; s < dim; ++s) negated[s] = -v[s];
            visit(std::move(negated), next);
        }
        frontier = std::move(next);
    }

    if (seen.size() != 2 * dim)
        throw std::logic_error("MABK orbit closure has unexpected size");

    // The closure must coincide with the known parametrization
    // (-1)^s WHT[chi_lambda . eps]; emit it in that canonical order.
    std::vector<MabkCoefficients> orbit;
    orbit.reserve(2 * dim);
    for (std::size_t m = 0; m < 2 * dim; ++m) {
        const bool negate = (m & dim) != 0;
        const std::size_t lambda = m & (dim - 1);
        IntVec v(dim);
        for (std::size_t kappa = 0; kappa < dim; ++kappa) {
            std::int64_t c = mabk_fourier_sign(std::popcount(kappa));
            if (std::popcount(kappa & lambda) & 1) c = -c;
            v[kappa] = negate ? -c : c;
        }
        walsh_hadamard_int(v);
        if (seen.count(v) == 0)
            throw std::logic_error("MABK orbit parametrization mismatch");
        MabkCoefficients c;
        c.n = n;
        c.beta = scale_to_beta(v);
        c.classical_bound = mabk_classical_bound(n);
        c.quantum_max = mabk_quantum_max(n);
        orbit.push_back(std::move(c));
    }
    return orbit;
}

void walsh_hadamard(std::span<double> values) {
    if (values.empty() || (values.size() & (values.size() - 1)) != 0)
        throw std::invalid_argument("Walsh-Hadamard needs a power-of-two size");
    for (std::size_t len = 1; len < values.size(); len <<= 1)
        for (std::size_t base = 0; base < values.size(); base += 2 * len)
            for (std::size_t i = base; i < base + len; ++i) {
                const double a = values[i];
                const double b = values[i + len];
                values[i] = a + b;
                values[i + len] = a - b;
            }
}

CorrelationCriteria evaluate_criteria(const CorrelationTensor& t) {
    const std::size_t dim = t.full.size();
    if (dim == 0 || dim != (std::size_t{1} << t.n))
        throw std::invalid_argument("tensor is missing its full correlators");

    // Reused across trials; the hot path allocates nothing after warm-up.
    static thread_local std::vector<double> work;
    work.assign(t.full.begin(), t.full.end());
    walsh_hadamard(work);

    CorrelationCriteria out;
    for (std::size_t kappa = 0; kappa < dim; ++kappa) {
        out.wwzb_lhs += std::abs(work[kappa]);
        if (mabk_fourier_sign(std::popcount(kappa)) < 0) work[kappa] = -work[kappa];
    }
    walsh_hadamard(work);
    out.mabk_single = std::abs(work[0]) * kInvSqrt2;
    for (std::size_t lambda = 0; lambda < dim; ++lambda) {
        const double value = std::abs(work[lambda]) * kInvSqrt2;
        if (value > out.mabk_orbit_best) {
            out.mabk_orbit_best = value;
            out.mabk_orbit_index = lambda;
        }
    }
    return out;
}

OrbitResult mabk_orbit_violated(const CorrelationTensor& t) {
    const CorrelationCriteria c = evaluate_criteria(t);
    return {c.mabk_orbit_best > mabk_classical_bound(t.n) + kViolationTolerance,
            c.mabk_orbit_best, c.mabk_orbit_index};
}

WwzbResult wwzb_violated(const CorrelationTensor& t) {
    const CorrelationCriteria c = evaluate_criteria(t);
    const double bound = static_cast<double>(std::size_t{1} << t.n);
    return {c.wwzb_lhs > bound + kViolationTolerance, c.wwzb_lhs};
}

}  // namespace bellmc
