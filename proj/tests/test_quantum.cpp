// test_quantum.cpp
// Correlator oracles: statevectors, Bloch operators, setting-assignment
// codecs, and the closed forms against the brute force.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bellmc/quantum.hpp"
#include "bellmc/rng.hpp"
#include "bellmc/sampling.hpp"
#include "bellmc/state.hpp"

using namespace bellmc;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

MeasurementFrame random_frame(int n, SamplingMode mode, std::uint64_t stream) {
    RngStream rng(31415, stream);
    return sample_frame(rng, n, mode);
}

}  // namespace

TEST_CASE("pow3 and assignment codecs") {
    CHECK(pow3(0) == 1);
    CHECK(pow3(1) == 3);
    CHECK(pow3(4) == 81);

    // Big-endian base 3: party 0 owns the most significant digit.
    const SettingAssignment a{PartySetting::Second, PartySetting::First,
                              PartySetting::Marginalized};
    CHECK(assignment_code(a) == 1 * 9 + 0 * 3 + 2);
    CHECK(assignment_from_code(3, assignment_code(a)) == a);

    for (std::size_t code = 0; code < pow3(3); ++code)
        CHECK(assignment_code(assignment_from_code(3, code)) == code);

    // sigma packs one bit per party, party 0 at the top.
    const SettingAssignment b = assignment_from_bits(3, 0b100);
    CHECK(b == SettingAssignment{PartySetting::Second, PartySetting::First,
                                 PartySetting::First});
    CHECK(assignment_from_bits(2, 0b01) ==
          SettingAssignment{PartySetting::First, PartySetting::Second});
}

TEST_CASE("measurement frame layout and validation") {
    std::vector<Direction> dirs{kDirZ, kDirX, kDirY, kDirZ};
    const MeasurementFrame frame(2, dirs);
    CHECK(frame.num_parties() == 2);
    // Setting s of party k sits at 2k + s.
    CHECK(dot(frame.direction(0, 0), kDirZ) == 1.0);
    CHECK(dot(frame.direction(0, 1), kDirX) == 1.0);
    CHECK(dot(frame.direction(1, 0), kDirY) == 1.0);
    CHECK(dot(frame.direction(1, 1), kDirZ) == 1.0);

    CHECK_THROWS_AS(MeasurementFrame(2, {kDirZ, kDirX, kDirY}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MeasurementFrame(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(frame.direction(2, 0), std::out_of_range);
    CHECK_THROWS_AS(frame.direction(0, 2), std::out_of_range);

    CHECK(is_orthogonal_frame(MeasurementFrame(2, {kDirZ, kDirX, kDirY, kDirZ})));
    CHECK_FALSE(is_orthogonal_frame(MeasurementFrame(1, {kDirZ, kDirZ})));
    // ROM sampling produces orthogonal pairs by construction, RIM almost
    // surely does not.
    CHECK(is_orthogonal_frame(random_frame(3, SamplingMode::Rom, 0)));
    CHECK_FALSE(is_orthogonal_frame(random_frame(3, SamplingMode::Rim, 0)));
}

TEST_CASE("statevectors of the supported states") {
    const auto ghz3 = statevector(StateSpec::ghz(3));
    REQUIRE(ghz3.size() == 8);
    CHECK(std::abs(ghz3[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(ghz3[7] - kInvSqrt2) < 1e-15);
    for (int i = 1; i < 7; ++i) CHECK(std::abs(ghz3[i]) == 0.0);

    const double theta = 0.3;
    const auto schmidt = statevector(StateSpec::schmidt_pair(theta));
    REQUIRE(schmidt.size() == 4);
    CHECK(std::abs(schmidt[0] - std::cos(theta)) < 1e-15);
    CHECK(std::abs(schmidt[3] - std::sin(theta)) < 1e-15);
    CHECK(std::abs(schmidt[1]) == 0.0);
    CHECK(std::abs(schmidt[2]) == 0.0);

    // |01> and |10> with party 0 as the most significant bit.
    const auto singlet = statevector(StateSpec::singlet());
    REQUIRE(singlet.size() == 4);
    CHECK(std::abs(singlet[1] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(singlet[2] + kInvSqrt2) < 1e-15);
}

TEST_CASE("bloch operator matrices") {
    using cd = std::complex<double>;
    const auto z = bloch_operator(kDirZ);
    CHECK(z == std::array<cd, 4>{1.0, 0.0, 0.0, -1.0});
    const auto x = bloch_operator(kDirX);
    CHECK(x == std::array<cd, 4>{0.0, 1.0, 1.0, 0.0});
    const auto y = bloch_operator(kDirY);
    CHECK(y == std::array<cd, 4>{cd(0.0), cd(0.0, -1.0), cd(0.0, 1.0), cd(0.0)});
    CHECK_THROWS_AS(bloch_operator(Direction{0.5, 0.0, 0.0}),
                    std::domain_error);
}

TEST_CASE("brute force reproduces the singlet correlator -a.b") {
    const StateSpec spec = StateSpec::singlet();
    RngStream rng(99, 0);
    for (int i = 0; i < 200; ++i) {
        const Direction a = sample_direction(rng);
        const Direction b = sample_direction(rng);
        const MeasurementFrame frame(2, {a, a, b, b});
        const double e = correlator_bruteforce(
            spec, frame, {PartySetting::First, PartySetting::First});
        CHECK(e == doctest::Approx(-dot(a, b)).epsilon(1e-12));
    }
    // Single-party marginals of the singlet vanish.
    const MeasurementFrame frame(2, {kDirZ, kDirX, kDirY, kDirZ});
    CHECK(std::abs(correlator_bruteforce(
              spec, frame, {PartySetting::First, PartySetting::Marginalized})) <
          1e-14);
}

TEST_CASE("ghz closed-form correlator on hand-picked frames") {
    const std::vector<Direction> zz{kDirZ, kDirZ};
    CHECK(ghz_correlator(2, zz) == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<Direction> zx{kDirZ, kDirX};
    CHECK(std::abs(ghz_correlator(2, zx)) < 1e-15);
    const std::vector<Direction> xx{kDirX, kDirX};
    CHECK(ghz_correlator(2, xx) == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<Direction> xy{kDirX, kDirY};
    CHECK(std::abs(ghz_correlator(2, xy)) < 1e-15);

    // Marginal with an odd number of measured parties vanishes, with an even
    // number it is the product of the cosines.
    const std::vector<Direction> one{kDirZ};
    CHECK(std::abs(ghz_correlator(3, one)) == 0.0);
    const std::vector<Direction> two{kDirZ, kDirZ};
    CHECK(ghz_correlator(3, two) == doctest::Approx(1.0).epsilon(1e-15));

    // Full tuple at n = 3: E = prod cos + cos(sum phi) prod sin; here the
    // x measurement kills prod cos and has azimuth 0, y has azimuth pi/2.
    const Direction tilted = normalized({1.0, 1.0, 1.0});
    const std::vector<Direction> full{kDirX, kDirY, tilted};
    const double expect =
        std::cos(kPi / 2 + tilted.phi()) * std::sin(tilted.theta());
    CHECK(ghz_correlator(3, full) ==
          doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("correlation tensor matches brute force for ghz and schmidt") {
    for (const int n : {2, 3, 4, 5}) {
        const StateSpec spec = StateSpec::ghz(n);
        for (const SamplingMode mode : {SamplingMode::Rim, SamplingMode::Rom}) {
            const MeasurementFrame frame =
                random_frame(n, mode, static_cast<std::uint64_t>(n));
            const CorrelationTensor t = correlation_tensor(spec, frame, true);
            REQUIRE(t.full.size() == (std::size_t{1} << n));
            REQUIRE(t.marginals.size() == pow3(n));
            CHECK(t.marginals.back() == 1.0);
            for (std::size_t sigma = 0; sigma < t.full.size(); ++sigma) {
                const double brute = correlator_bruteforce(
                    spec, frame, assignment_from_bits(n, sigma));
                CHECK(t.full[sigma] ==
                      doctest::Approx(brute).epsilon(1e-12));
                CHECK(std::abs(t.full[sigma]) <= 1.0 + 1e-10);
            }
            for (std::size_t code = 0; code < t.marginals.size(); ++code) {
                const double brute = correlator_bruteforce(
                    spec, frame, assignment_from_code(n, code));
                CHECK(t.marginals[code] ==
                      doctest::Approx(brute).epsilon(1e-12));
            }
        }
    }

    const StateSpec schmidt = StateSpec::schmidt_pair(0.19);
    const MeasurementFrame frame = random_frame(2, SamplingMode::Rim, 77);
    const CorrelationTensor t = correlation_tensor(schmidt, frame, true);
    for (std::size_t code = 0; code < t.marginals.size(); ++code) {
        const double brute =
            correlator_bruteforce(schmidt, frame, assignment_from_code(2, code));
        CHECK(t.marginals[code] ==
              doctest::Approx(brute).epsilon(1e-12));
    }
}

TEST_CASE("closed-form marginal tables match brute force at larger n") {
    // One frame per n is enough here: every one of the 3^n setting
    // assignments is compared, so an indexing slip cannot hide.
    for (const int n : {7, 8, 9, 10}) {
        const StateSpec spec = StateSpec::ghz(n);
        const MeasurementFrame frame = random_frame(
            n, n % 2 == 0 ? SamplingMode::Rom : SamplingMode::Rim,
            static_cast<std::uint64_t>(400 + n));
        const CorrelationTensor t = correlation_tensor(spec, frame, true);
        REQUIRE(t.marginals.size() == pow3(n));
        std::size_t mismatched = 0;
        double worst = 0.0;
        for (std::size_t code = 0; code < t.marginals.size(); ++code) {
            const double brute = correlator_bruteforce(
                spec, frame, assignment_from_code(n, code));
            const double diff = std::abs(t.marginals[code] - brute);
            worst = std::max(worst, diff);
            if (diff > 1e-10) ++mismatched;
        }
        CHECK(mismatched == 0);
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("ghz(2) and the maximally entangled schmidt pair agree") {
    const MeasurementFrame frame = random_frame(2, SamplingMode::Rim, 5);
    const CorrelationTensor a =
        correlation_tensor(StateSpec::ghz(2), frame, true);
    const CorrelationTensor b =
        correlation_tensor(StateSpec::schmidt_pair(kPi / 4), frame, true);
    for (std::size_t i = 0; i < a.marginals.size(); ++i)
        CHECK(a.marginals[i] ==
              doctest::Approx(b.marginals[i]).epsilon(1e-12));
}

TEST_CASE("schmidt pair closed form") {
    // E = az bz + sin(2 theta) (ax bx - ay by); the z marginal is cos(2 theta).
    RngStream rng(4, 0);
    for (int it = 0; it < 20; ++it) {
        const double theta = kPi / 4.0 * (it + 0.5) / 20.0;
        const StateSpec spec = StateSpec::schmidt_pair(theta);
        for (int pair = 0; pair < 50; ++pair) {
            const Direction a0 = sample_direction(rng);
            const Direction a1 = sample_direction(rng);
            const Direction b0 = sample_direction(rng);
            const Direction b1 = sample_direction(rng);
            const MeasurementFrame frame(2, {a0, a1, b0, b1});
            const CorrelationTensor t = correlation_tensor(spec, frame, false);
            for (std::size_t sigma = 0; sigma < 4; ++sigma) {
                const Direction& a = sigma & 2 ? a1 : a0;
                const Direction& b = sigma & 1 ? b1 : b0;
                const double expect =
                    a.z * b.z + std::sin(2 * theta) * (a.x * b.x - a.y * b.y);
                const double brute = correlator_bruteforce(
                    spec, frame, assignment_from_bits(2, sigma));
                CHECK(brute == doctest::Approx(expect).epsilon(1e-10));
                CHECK(t.full[sigma] == doctest::Approx(brute).epsilon(1e-10));
            }
        }
    }

    const double theta = 0.22;
    const StateSpec spec = StateSpec::schmidt_pair(theta);
    const Direction a = sample_direction(rng);
    const Direction b = sample_direction(rng);
    const MeasurementFrame frame(2, {a, a, b, b});
    CHECK(correlator_bruteforce(
              spec, frame, {PartySetting::First, PartySetting::Marginalized}) ==
          doctest::Approx(std::cos(2 * theta) * a.z).epsilon(1e-12));
}

TEST_CASE("tensor without marginals skips the 3^n table") {
    const MeasurementFrame frame = random_frame(4, SamplingMode::Rim, 9);
    const CorrelationTensor t =
        correlation_tensor(StateSpec::ghz(4), frame, false);
    CHECK(t.full.size() == 16);
    CHECK_FALSE(t.has_marginals());
}
