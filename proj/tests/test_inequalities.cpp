// test_inequalities.cpp
// MABK coefficients, the relabeling orbit and its closure, the fast
// Walsh-Hadamard criteria path, and the WWZB bound.

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "bellmc/inequalities.hpp"
#include "bellmc/quantum.hpp"
#include "bellmc/rng.hpp"
#include "bellmc/sampling.hpp"
#include "bellmc/state.hpp"

using namespace bellmc;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

CorrelationTensor random_tensor(int n, std::uint64_t stream) {
    CorrelationTensor t;
    t.n = n;
    t.full.resize(std::size_t{1} << n);
    RngStream rng(888, stream);
    for (double& e : t.full) e = 2.0 * rng.uniform01() - 1.0;
    return t;
}

CorrelationTensor ghz_tensor(int n, SamplingMode mode, std::uint64_t stream) {
    RngStream rng(777, stream);
    const MeasurementFrame frame = sample_frame(rng, n, mode);
    return correlation_tensor(StateSpec::ghz(n), frame, false);
}

// Deterministic local strategy: party k answers o(k, s) = +/-1 regardless of
// anything else, so E(sigma) factorizes and the classical bounds are tight.
CorrelationTensor strategy_tensor(int n, unsigned bits) {
    CorrelationTensor t;
    t.n = n;
    const std::size_t tuples = std::size_t{1} << n;
    t.full.resize(tuples);
    for (std::size_t sigma = 0; sigma < tuples; ++sigma) {
        double e = 1.0;
        for (int k = 0; k < n; ++k) {
            const int s = static_cast<int>(sigma >> (n - 1 - k)) & 1;
            const int flip = static_cast<int>(bits >> (2 * k + s)) & 1;
            e *= flip != 0 ? -1.0 : 1.0;
        }
        t.full[sigma] = e;
    }
    return t;
}

double naive_wht_entry(const std::vector<double>& in, std::size_t k) {
    double acc = 0.0;
    for (std::size_t s = 0; s < in.size(); ++s)
        acc += (std::popcount(k & s) % 2 != 0 ? -1.0 : 1.0) * in[s];
    return acc;
}

}  // namespace

TEST_CASE("classical bound and quantum maximum") {
    CHECK(mabk_classical_bound(2) == doctest::Approx(2.0 * kSqrt2).epsilon(1e-15));
    CHECK(mabk_quantum_max(2) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(mabk_classical_bound(3) == doctest::Approx(std::pow(2.0, 2.5)).epsilon(1e-15));
    CHECK(mabk_quantum_max(3) == doctest::Approx(std::pow(2.0, 3.5)).epsilon(1e-15));
    for (int n = 2; n <= 8; ++n)
        CHECK(mabk_quantum_max(n) / mabk_classical_bound(n) ==
              doctest::Approx(std::pow(2.0, (n - 1) / 2.0)).epsilon(1e-13));
}

TEST_CASE("mabk coefficients at n = 2 are the chsh vector") {
    const MabkCoefficients& c = mabk_coefficients(2);
    REQUIRE(c.beta.size() == 4);
    CHECK(c.beta[0] == doctest::Approx(-kSqrt2).epsilon(1e-15));
    CHECK(c.beta[1] == doctest::Approx(kSqrt2).epsilon(1e-15));
    CHECK(c.beta[2] == doctest::Approx(kSqrt2).epsilon(1e-15));
    CHECK(c.beta[3] == doctest::Approx(kSqrt2).epsilon(1e-15));
    CHECK(c.classical_bound == doctest::Approx(2.0 * kSqrt2).epsilon(1e-15));
    CHECK(c.quantum_max == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(mabk_coefficients(1), std::invalid_argument);
}

TEST_CASE("coefficient l1 mass follows the parity of n") {
    // Even n: all 2^n settings carry weight 2^((n-1)/2).  Odd n: only the
    // 2^(n-1) settings of one parity survive, each with weight 2^(n/2).
    for (int n = 2; n <= 8; ++n) {
        const MabkCoefficients& c = mabk_coefficients(n);
        double l1 = 0.0;
        std::size_t nonzero = 0;
        for (const double b : c.beta) {
            l1 += std::abs(b);
            if (b != 0.0) ++nonzero;
        }
        const double expected =
            n % 2 == 0 ? std::pow(2.0, (3.0 * n - 1.0) / 2.0)
                       : std::pow(2.0, (3.0 * n - 2.0) / 2.0);
        CHECK(l1 == doctest::Approx(expected).epsilon(1e-12));
        CHECK(nonzero == (n % 2 == 0 ? (std::size_t{1} << n)
                                     : (std::size_t{1} << (n - 1))));
    }
}

TEST_CASE("the standard inequality scores zero on the textbook chsh frame") {
    // A0 = z, A1 = x, B0/B1 = (z +/- x)/sqrt2 maximizes the (1,1,1,-1)
    // combination, which sits elsewhere in the orbit: the inequality as
    // given scores 0 here, while the orbit reaches the quantum maximum.
    const Direction bp = normalized({1.0, 0.0, 1.0});
    const Direction bm = normalized({-1.0, 0.0, 1.0});
    const MeasurementFrame frame(2, {kDirZ, kDirX, bp, bm});
    const CorrelationTensor t =
        correlation_tensor(StateSpec::ghz(2), frame, false);
    const MabkCoefficients& c = mabk_coefficients(2);
    CHECK(std::abs(mabk_value(c, t)) < 1e-12);
    const CorrelationCriteria crit = evaluate_criteria(t);
    CHECK(crit.mabk_single < 1e-12);
    CHECK(crit.mabk_orbit_best == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(crit.wwzb_lhs == doctest::Approx(4.0 * kSqrt2).epsilon(1e-12));
    CHECK(wwzb_violated(t).violated);
}

TEST_CASE("equal settings on one party kill every chsh violation") {
    // With b1 = b2 the two tensor columns coincide, so each CHSH combination
    // is at most 2 and the MABK value cannot exceed 2 sqrt2.
    RngStream rng(4242, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const Direction a0 = sample_direction(rng);
        const Direction a1 = sample_direction(rng);
        const Direction b = sample_direction(rng);
        const MeasurementFrame frame(2, {a0, a1, b, b});
        const CorrelationTensor t =
            correlation_tensor(StateSpec::ghz(2), frame, false);
        CHECK_FALSE(mabk_orbit_violated(t).violated);
        CHECK(evaluate_criteria(t).mabk_orbit_best <= 2.0 * kSqrt2 + 1e-9);
    }
}

TEST_CASE("walsh hadamard transform") {
    std::vector<double> delta{1.0, 0.0, 0.0, 0.0};
    walsh_hadamard(delta);
    CHECK(delta == std::vector<double>{1.0, 1.0, 1.0, 1.0});

    std::vector<double> flat{1.0, 1.0, 1.0, 1.0};
    walsh_hadamard(flat);
    CHECK(flat == std::vector<double>{4.0, 0.0, 0.0, 0.0});

    // Involution up to the factor 2^n, against the naive transform.
    const CorrelationTensor t = random_tensor(4, 1);
    std::vector<double> v = t.full;
    walsh_hadamard(v);
    for (std::size_t k = 0; k < v.size(); ++k)
        CHECK(v[k] == doctest::Approx(naive_wht_entry(t.full, k)).epsilon(1e-12));
    walsh_hadamard(v);
    for (std::size_t s = 0; s < v.size(); ++s)
        CHECK(v[s] ==
              doctest::Approx(16.0 * t.full[s]).epsilon(1e-12));

    CHECK_THROWS_AS(
        [] {
            std::vector<double> bad(3, 0.0);
            walsh_hadamard(bad);
        }(),
        std::invalid_argument);
}

TEST_CASE("orbit size, canonical order, and closure") {
    for (int n = 2; n <= 6; ++n) {
        const std::vector<MabkCoefficients> orbit = mabk_orbit(n);
        const std::size_t half = std::size_t{1} << n;
        REQUIRE(orbit.size() == 2 * half);

        // Index 0 is the input inequality; the second half is the global
        // negation of the first, member by member.
        const MabkCoefficients& base = mabk_coefficients(n);
        for (std::size_t s = 0; s < half; ++s) {
            CHECK(orbit[0].beta[s] ==
                  doctest::Approx(base.beta[s]).epsilon(1e-14));
            for (std::size_t lambda = 0; lambda < half; ++lambda)
                CHECK(orbit[half + lambda].beta[s] ==
                      doctest::Approx(-orbit[lambda].beta[s]).epsilon(1e-14));
        }

        // All members distinct, all with the same bounds and l1 mass.
        std::set<std::vector<long long>> seen;
        for (const MabkCoefficients& m : orbit) {
            CHECK(m.classical_bound == base.classical_bound);
            std::vector<long long> key;
            key.reserve(half);
            for (const double b : m.beta)
                key.push_back(std::llround(b * kSqrt2 * 1024.0));
            seen.insert(std::move(key));
        }
        CHECK(seen.size() == orbit.size());
    }
    CHECK_THROWS_AS(mabk_orbit(11), std::length_error);
}

TEST_CASE("orbit is closed under the generating relabelings") {
    for (const int n : {2, 3}) {
        const std::vector<MabkCoefficients> orbit = mabk_orbit(n);
        const std::size_t size = std::size_t{1} << n;

        std::set<std::vector<long long>> members;
        const auto key = [&](const std::vector<double>& beta) {
            std::vector<long long> k;
            k.reserve(beta.size());
            for (const double b : beta)
                k.push_back(std::llround(b * kSqrt2 * 1024.0));
            return k;
        };
        for (const MabkCoefficients& m : orbit) members.insert(key(m.beta));

        const auto expect_member = [&](const std::vector<double>& beta) {
            CHECK(members.count(key(beta)) == 1);
        };

        for (const MabkCoefficients& m : orbit) {
            // Global negation.
            std::vector<double> neg(size);
            for (std::size_t s = 0; s < size; ++s) neg[s] = -m.beta[s];
            expect_member(neg);
            for (int k = 0; k < n; ++k) {
                const std::size_t bit = std::size_t{1} << (n - 1 - k);
                // Swapping the two settings of party k permutes sigma.
                std::vector<double> swapped(size);
                for (std::size_t s = 0; s < size; ++s)
                    swapped[s ^ bit] = m.beta[s];
                expect_member(swapped);
                // Flipping the outcome of (k, second setting) negates every
                // coefficient whose tuple uses that setting.
                std::vector<double> flipped(size);
                for (std::size_t s = 0; s < size; ++s)
                    flipped[s] = (s & bit) != 0 ? -m.beta[s] : m.beta[s];
                expect_member(flipped);
            }
            // Transposing parties 0 and 1 permutes the top two sigma bits.
            std::vector<double> transposed(size);
            for (std::size_t s = 0; s < size; ++s) {
                const std::size_t b0 = (s >> (n - 1)) & 1;
                const std::size_t b1 = (s >> (n - 2)) & 1;
                std::size_t swapped_s = s;
                swapped_s &= ~((std::size_t{1} << (n - 1)) |
                               (std::size_t{1} << (n - 2)));
                swapped_s |= (b1 << (n - 1)) | (b0 << (n - 2));
                transposed[swapped_s] = m.beta[s];
            }
            expect_member(transposed);
        }
    }
}

TEST_CASE("fast criteria agree with the explicit orbit") {
    for (int n = 2; n <= 5; ++n) {
        const std::vector<MabkCoefficients> orbit = mabk_orbit(n);
        for (int rep = 0; rep < 40; ++rep) {
            const CorrelationTensor t =
                rep % 2 == 0
                    ? random_tensor(n, static_cast<std::uint64_t>(100 * n + rep))
                    : ghz_tensor(n,
                                 rep % 4 == 1 ? SamplingMode::Rim
                                              : SamplingMode::Rom,
                                 static_cast<std::uint64_t>(100 * n + rep));
            const CorrelationCriteria fast = evaluate_criteria(t);

            CHECK(fast.mabk_single ==
                  doctest::Approx(std::abs(mabk_value(orbit[0], t))).epsilon(1e-9));

            double best = 0.0;
            for (const MabkCoefficients& m : orbit)
                best = std::max(best, mabk_value(m, t));
            CHECK(fast.mabk_orbit_best ==
                  doctest::Approx(best).epsilon(1e-9));
            REQUIRE(fast.mabk_orbit_index < orbit.size() / 2);
            CHECK(std::abs(mabk_value(orbit[fast.mabk_orbit_index], t)) ==
                  doctest::Approx(best).epsilon(1e-9));

            std::vector<double> hat = t.full;
            walsh_hadamard(hat);
            double lhs = 0.0;
            for (const double h : hat) lhs += std::abs(h);
            CHECK(fast.wwzb_lhs ==
                  doctest::Approx(lhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("deterministic strategies sit exactly on the classical boundary") {
    for (const int n : {2, 3, 4}) {
        for (const unsigned bits : {0u, 5u, 171u, 38u}) {
            const CorrelationTensor t = strategy_tensor(n, bits);
            const CorrelationCriteria crit = evaluate_criteria(t);
            // A local deterministic strategy saturates WWZB at 2^n and never
            // violates anything.
            CHECK(crit.wwzb_lhs ==
                  doctest::Approx(std::pow(2.0, n)).epsilon(1e-12));
            CHECK_FALSE(wwzb_violated(t).violated);
            CHECK_FALSE(mabk_orbit_violated(t).violated);
            CHECK(crit.mabk_orbit_best <=
                  mabk_classical_bound(n) + kViolationTolerance);
        }
    }
}

TEST_CASE("quantum tensors respect the quantum maximum and chain order") {
    for (int n = 2; n <= 4; ++n) {
        for (int rep = 0; rep < 50; ++rep) {
            const CorrelationTensor t = ghz_tensor(
                n, rep % 2 == 0 ? SamplingMode::Rim : SamplingMode::Rom,
                static_cast<std::uint64_t>(rep));
            const CorrelationCriteria crit = evaluate_criteria(t);
            CHECK(crit.mabk_single <= crit.mabk_orbit_best + 1e-12);
            CHECK(crit.mabk_orbit_best <= mabk_quantum_max(n) + 1e-9);
            // Normalized margins are ordered: the orbit margin never beats
            // the wwzb margin, which is what makes orbit => wwzb sound.
            CHECK(crit.mabk_orbit_best / mabk_classical_bound(n) <=
                  crit.wwzb_lhs / std::pow(2.0, n) + 1e-12);
        }
    }
}

TEST_CASE("orbit bound and criterion inclusion hold at scale") {
    // 1e5 GHZ frames per n: the best orbit value stays under the quantum
    // maximum 2^(3n/2-1), and an orbit violation always comes with a WWZB
    // violation.
    for (int n = 2; n <= 6; ++n) {
        RngStream rng(31337, static_cast<std::uint64_t>(n));
        const double qmax = mabk_quantum_max(n);
        const double cbound = mabk_classical_bound(n);
        const double wwzb_bound = std::pow(2.0, n);
        double max_orbit = 0.0;
        int orbit_hits = 0;
        int inclusion_misses = 0;
        int ordering_misses = 0;
        const int trials = 100000;
        for (int i = 0; i < trials; ++i) {
            const MeasurementFrame frame = sample_frame(
                rng, n, i % 2 == 0 ? SamplingMode::Rim : SamplingMode::Rom);
            const CorrelationTensor t =
                correlation_tensor(StateSpec::ghz(n), frame, false);
            const CorrelationCriteria crit = evaluate_criteria(t);
            max_orbit = std::max(max_orbit, crit.mabk_orbit_best);
            if (crit.mabk_single > crit.mabk_orbit_best + 1e-12)
                ++ordering_misses;
            if (crit.mabk_orbit_best > cbound + kViolationTolerance) {
                ++orbit_hits;
                if (!(crit.wwzb_lhs > wwzb_bound + kViolationTolerance))
                    ++inclusion_misses;
            }
        }
        CHECK(max_orbit <= qmax + 1e-9);
        CHECK(ordering_misses == 0);
        CHECK(inclusion_misses == 0);
        CHECK(orbit_hits > 0);  // keeps the inclusion check non-vacuous
    }
}

TEST_CASE("violation verdicts use the tolerance margin") {
    // Exactly at the bound: not a violation.
    CorrelationTensor t = strategy_tensor(2, 0);
    CHECK_FALSE(mabk_orbit_violated(t).violated);
    CHECK_FALSE(wwzb_violated(t).violated);
    // Clearly above: both fire (this is the PR-box tensor, wwzb lhs 8).
    CorrelationTensor pr;
    pr.n = 2;
    pr.full = {1.0, 1.0, 1.0, -1.0};
    const OrbitResult orbit = mabk_orbit_violated(pr);
    CHECK(orbit.violated);
    CHECK(orbit.best_value == doctest::Approx(4.0 * kSqrt2).epsilon(1e-12));
    const WwzbResult wwzb = wwzb_violated(pr);
    CHECK(wwzb.violated);
    CHECK(wwzb.lhs == doctest::Approx(8.0).epsilon(1e-12));
}
