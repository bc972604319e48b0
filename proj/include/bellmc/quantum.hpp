// quantum.hpp
// Measurement frames, correlation tensors, and the quantum-mechanical
// correlators behind them.  Two evaluation paths exist on purpose: closed
// forms for the states the simulator samples in bulk, and a statevector
// brute force that serves as the independent oracle for them.
//
// Index conventions (used consistently across the whole project):
//   * Parties are numbered 0..n-1, with party 0 always the most significant
//     position in any packed index.
//   * A full setting tuple sigma packs one bit per party: bit (n-1-k) is 0
//     when party k uses its first setting, 1 for the second.
//   * A setting assignment packs one base-3 digit per party, big-endian:
//     digit 0 = first setting, 1 = second setting, 2 = marginalized (that
//     party's outcome is summed over).  The all-marginalized code 3^n - 1
//     denotes normalization and always has correlator exactly 1.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bellmc/direction.hpp"
#include "bellmc/state.hpp"

namespace bellmc {

enum class PartySetting : std::uint8_t {
    First = 0,
    Second = 1,
    Marginalized = 2,
};

// One digit per party, party 0 first.
using SettingAssignment = std::vector<PartySetting>;

std::size_t pow3(int n);

// Big-endian base-3 code of an assignment, matching the marginals layout of
// CorrelationTensor.
std::size_t assignment_code(const SettingAssignment& assignment);
SettingAssignment assignment_from_code(int n, std::size_t code);

// The full-tuple assignment encoded by the bit pattern sigma (see header
// comment for the bit convention).
SettingAssignment assignment_from_bits(int n, std::size_t sigma);

// Two measurement directions per party.  Setting s of party k lives at
// index 2k + s; nothing here constrains the two settings of a party to be
// orthogonal (that is a property of the ROM sampler, not of the frame).
class MeasurementFrame {
public:
    MeasurementFrame(int num_parties, std::vector<Direction> directions);

    int num_parties() const { return n_; }

    const Direction& direction(int party, int setting) const;

    const std::vector<Direction>& directions() const { return dirs_; }

private:
    int n_;
    std::vector<Direction> dirs_;
};

// True when every party's two settings are orthogonal within tol, as ROM
// sampling guarantees.
bool is_orthogonal_frame(const MeasurementFrame& frame, double tol = 1e-10);

// All correlators of one state under one frame.
//
//   full[sigma]       E for the full setting tuple sigma, size 2^n.
//   marginals[code]   E for every assignment code in base-3 order, size 3^n;
//                     empty unless requested.  Entry 3^n - 1 is exactly 1.
struct CorrelationTensor {
    int n = 0;
    std::vector<double> full;
    std::vector<double> marginals;

    bool has_marginals() const { return !marginals.empty(); }
};

// Amplitudes of the given state, 2^n entries, party 0 owning the most
// significant qubit index bit.
std::vector<std::complex<double>> statevector(const StateSpec& spec);

// The traceless spin observable n.sigma for a unit direction, as a row-major
// 2x2 matrix.  Throws std::domain_error if the direction is not unit length.
std::array<std::complex<double>, 4> bloch_operator(const Direction& d);

// Oracle path: builds the statevector, applies one single-qubit observable
// per active party, and takes the inner product.  Marginalized parties get
// the identity.  O(n * 2^n) per call; use correlation_tensor for bulk work.
double correlator_bruteforce(const StateSpec& spec, const MeasurementFrame& frame,
                             const SettingAssignment& assignment);

// Closed-form GHZ correlator for a set of measured parties (the rest are
// marginalized).  With k = active_dirs.size() parties measured out of n:
//   E = (1 + (-1)^k)/2 * prod cos(theta_j)           for k < n
// and the full-tuple case k = n additionally gains
//   cos(sum phi_j) * prod sin(theta_j).
double ghz_correlator(int n, std::span<const Direction> active_dirs);

// Every correlator of the state under the frame.  GHZ and SchmidtPair go
// through their closed forms; anything else falls back to brute force.
// with_marginals controls whether the 3^n marginal table is filled in.
CorrelationTensor correlation_tensor(const StateSpec& spec,
                                     const MeasurementFrame& frame,
                                     bool with_marginals);

}  // namespace bellmc
