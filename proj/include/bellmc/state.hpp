// state.hpp
// Which entangled state an experiment measures.  A StateSpec is a cheap value
// type; the actual amplitudes are produced on demand by quantum.hpp.

#pragma once

#include <numbers>
#include <stdexcept>

namespace bellmc {

// Statevector size is 2^n; the default cap keeps the brute-force path under
// tens of megabytes.  ghz() accepts a larger cap explicitly if a caller
// really wants one.
inline constexpr int kDefaultMaxParties = 20;

class StateSpec {
public:
    enum class Kind {
        Ghz,          // (|0...0> + |1...1>)/sqrt(2), n >= 2 parties
        SchmidtPair,  // cos(theta)|00> + sin(theta)|11>, theta in [0, pi/4]
        Singlet,      // (|01> - |10>)/sqrt(2)
    };

    static StateSpec ghz(int parties, int max_parties = kDefaultMaxParties) {
        if (parties < 2)
            throw std::invalid_argument("GHZ state needs at least 2 parties");
        if (parties > max_parties)
            throw std::length_error("GHZ party count exceeds configured maximum");
        return StateSpec(Kind::Ghz, parties, 0.0);
    }

    // theta = pi/4 is maximally entangled, theta = 0 is a product state.
    static StateSpec schmidt_pair(double theta) {
        if (!(theta >= 0.0 && theta <= std::numbers::pi / 4.0))
            throw std::invalid_argument("Schmidt angle must lie in [0, pi/4]");
        return StateSpec(Kind::SchmidtPair, 2, theta);
    }

    static StateSpec singlet() { return StateSpec(Kind::Singlet, 2, 0.0); }

    Kind kind() const { return kind_; }
    int num_parties() const { return n_; }

    // Only meaningful for SchmidtPair.
    double schmidt_theta() const {
        if (kind_ != Kind::SchmidtPair)
            throw std::logic_error("schmidt_theta on a non-Schmidt state");
        return theta_;
    }

private:
    StateSpec(Kind kind, int n, double theta)
        : kind_(kind), n_(n), theta_(theta) {}

    Kind kind_;
    int n_;
    double theta_;
};

}  // namespace bellmc
