// quantum.cpp
// Statevector oracle and closed-form correlators.

#include "bellmc/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellmc {

namespace {

using Complex = std::complex<double>;

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

// In-place application of a 2x2 operator to one qubit.  Party k owns bit
// (n-1-k) of the amplitude index.
void apply_single_qubit(std::vector<Complex>& psi, int n, int party,
                        const std::array<Complex, 4>& m) {
    const std::size_t bit = std::size_t{1} << (n - 1 - party);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (i & bit) continue;
        const Complex a0 = psi[i];
        const Complex a1 = psi[i | bit];
        psi[i] = m[0] * a0 + m[1] * a1;
        psi[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

// Spherical decomposition of a unit direction.  sin(theta) is computed from
// x and y so that it is exactly 0 for the poles.
struct Spherical {
    double cos_theta;
    double sin_theta;
    double phi;
};

Spherical spherical(const Direction& d) {
    return {d.z, std::hypot(d.x, d.y), d.phi()};
}

// E(a, b) for cos(theta)|00> + sin(theta)|11| with both parties measured.
double schmidt_pair_correlator(double theta, const Direction& a, const Direction& b) {
    const double sin2t = std::sin(2.0 * theta);
    return a.z * b.z + sin2t * (a.x * b.x - a.y * b.y);
}

void fill_ghz(const StateSpec& spec, const MeasurementFrame& frame,
              bool with_marginals, CorrelationTensor& out) {
    const int n = spec.num_parties();
    const std::size_t dim = std::size_t{1} << n;

    std::array<std::vector<Spherical>, 2> sph;
    sph[0].reserve(n);
    sph[1].reserve(n);
    for (int k = 0; k < n; ++k)
        for (int s = 0; s < 2; ++s) sph[s].push_back(spherical(frame.direction(k, s)));

    // Products over parties via doubling: after processing parties 0..k-1
    // the arrays hold every prefix combination, party 0 as the most
    // significant bits.  The backward loop writes index 2i+1 before 2i so
    // in-place expansion is safe.
    std::vector<double> prod_cos(dim), prod_sin(dim), sum_phi(dim);
    prod_cos[0] = 1.0;
    prod_sin[0] = 1.0;
    sum_phi[0] = 0.0;
    std::size_t size = 1;
    for (int k = 0; k < n; ++k) {
        for (std::size_t i = size; i-- > 0;) {
            prod_cos[2 * i + 1] = prod_cos[i] * sph[1][k].cos_theta;
            prod_cos[2 * i] = prod_cos[i] * sph[0][k].cos_theta;
            prod_sin[2 * i + 1] = prod_sin[i] * sph[1][k].sin_theta;
            prod_sin[2 * i] = prod_sin[i] * sph[0][k].sin_theta;
            sum_phi[2 * i + 1] = sum_phi[i] + sph[1][k].phi;
            sum_phi[2 * i] = sum_phi[i] + sph[0][k].phi;
        }
        size *= 2;
    }

    out.full.resize(dim);
    const bool n_even = (n % 2 == 0);
    for (std::size_t sigma = 0; sigma < dim; ++sigma) {
        const double base = n_even ? prod_cos[sigma] : 0.0;
        out.full[sigma] = base + std::cos(sum_phi[sigma]) * prod_sin[sigma];
    }

    if (!with_marginals) return;
    const std::size_t codes = pow3(n);
    out.marginals.assign(codes, 0.0);
    for (std::size_t code = 0; code < codes; ++code) {
        // Decode digits, most significant (party 0) first.
        int active = 0;
        double pc = 1.0;
        bool any_marginal = false;
        std::size_t sigma = 0;
        std::size_t rest = code;
        for (int k = n; k-- > 0;) {
            const int digit = static_cast<int>(rest % 3);
            rest /= 3;
            if (digit == 2) {
                any_marginal = true;
            } else {
                ++active;
                pc *= sph[digit][k].cos_theta;
                sigma |= static_cast<std::size_t>(digit) << (n - 1 - k);
            }
        }
        if (!any_marginal) {
            out.marginals[code] = out.full[sigma];
        } else if (active % 2 == 0) {
            out.marginals[code] = pc;  // includes the empty product 1 for code 3^n - 1
        }
    }
}

void fill_schmidt_pair(double theta, const MeasurementFrame& frame,
                       bool with_marginals, CorrelationTensor& out) {
    const double cos2t = std::cos(2.0 * theta);
    out.full.resize(4);
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            out.full[2 * s1 + s2] = schmidt_pair_correlator(
                theta, frame.direction(0, s1), frame.direction(1, s2));

    if (!with_marginals) return;
    out.marginals.assign(9, 0.0);
    for (std::size_t code = 0; code < 9; ++code) {
        const int d0 = static_cast<int>(code / 3);
        const int d1 = static_cast<int>(code % 3);
        double e;
        if (d0 < 2 && d1 < 2) {
            e = out.full[2 * d0 + d1];
        } else if (d0 < 2) {
            e = cos2t * frame.direction(0, d0).z;  // party 1 marginalized
        } else if (d1 < 2) {
            e = cos2t * frame.direction(1, d1).z;
        } else {
            e = 1.0;
        }
        out.marginals[code] = e;
    }
}

void fill_bruteforce(const StateSpec& spec, const MeasurementFrame& frame,
                     bool with_marginals, CorrelationTensor& out) {
    const int n = spec.num_parties();
    const std::size_t dim = std::size_t{1} << n;
    out.full.resize(dim);
    for (std::size_t sigma = 0; sigma < dim; ++sigma)
        out.full[sigma] =
            correlator_bruteforce(spec, frame, assignment_from_bits(n, sigma));
    if (!with_marginals) return;
    const std::size_t codes = pow3(n);
    out.marginals.resize(codes);
    for (std::size_t code = 0; code < codes; ++code)
        out.marginals[code] =
            correlator_bruteforce(spec, frame, assignment_from_code(n, code));
    out.marginals[codes - 1] = 1.0;  // normalization entry is exact by definition
}

}  // namespace

std::size_t pow3(int n) {
    std::size_t p = 1;
    for (int i = 0; i < n; ++i) p *= 3;
    return p;
}

std::size_t assignment_code(const SettingAssignment& assignment) {
    std::size_t code = 0;
    for (const PartySetting s : assignment)
        code = code * 3 + static_cast<std::size_t>(s);
    return code;
}

SettingAssignment assignment_from_code(int n, std::size_t code) {
    SettingAssignment a(static_cast<std::size_t>(n));
    for (int k = n; k-- > 0;) {
        a[k] = static_cast<PartySetting>(code % 3);
        code /= 3;
    }
    if (code != 0) throw std::out_of_range("assignment code out of range");
    return a;
}

SettingAssignment assignment_from_bits(int n, std::size_t sigma) {
    SettingAssignment a(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        a[k] = static_cast<PartySetting>((sigma >> (n - 1 - k)) & 1);
    return a;
}

MeasurementFrame::MeasurementFrame(int num_parties, std::vector<Direction> directions)
    : n_(num_parties), dirs_(std::move(directions)) {
    if (n_ < 1) throw std::invalid_argument("frame needs at least one party");
    if (dirs_.size() != static_cast<std::size_t>(2 * n_))
        throw std::invalid_argument("frame needs exactly two directions per party");
}

const Direction& MeasurementFrame::direction(int party, int setting) const {
    if (party < 0 || party >= n_ || setting < 0 || setting > 1)
        throw std::out_of_range("frame direction index out of range");
    return dirs_[static_cast<std::size_t>(2 * party + setting)];
}

bool is_orthogonal_frame(const MeasurementFrame& frame, double tol) {
    for (int k = 0; k < frame.num_parties(); ++k)
        if (std::abs(dot(frame.direction(k, 0), frame.direction(k, 1))) > tol)
            return false;
    return true;
}

std::vector<std::complex<double>> statevector(const StateSpec& spec) {
    switch (spec.kind()) {
        case StateSpec::Kind::Ghz: {
            std::vector<Complex> psi(std::size_t{1} << spec.num_parties());
            psi.front() = kInvSqrt2;
            psi.back() = kInvSqrt2;
            return psi;
        }
        case StateSpec::Kind::SchmidtPair: {
            const double t = spec.schmidt_theta();
            return {std::cos(t), 0.0, 0.0, std::sin(t)};
        }
        case StateSpec::Kind::Singlet:
            return {0.0, kInvSqrt2, -kInvSqrt2, 0.0};
    }
    throw std::logic_error("unhandled state kind");
}

std::array<std::complex<double>, 4> bloch_operator(const Direction& d) {
    if (!is_unit(d))
        throw std::domain_error("measurement direction must be a unit vector");
    return {Complex{d.z, 0.0}, Complex{d.x, -d.y}, Complex{d.x, d.y},
            Complex{-d.z, 0.0}};
}

double correlator_bruteforce(const StateSpec& spec, const MeasurementFrame& frame,
                             const SettingAssignment& assignment) {
    const int n = spec.num_parties();
    if (frame.num_parties() != n)
        throw std::invalid_argument("frame party count does not match state");
    if (assignment.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("assignment length does not match state");

    const std::vector<Complex> psi = statevector(spec);
    std::vector<Complex> phi = psi;
    for (int k = 0; k < n; ++k) {
        const PartySetting s = assignment[static_cast<std::size_t>(k)];
        if (s == PartySetting::Marginalized) continue;
        apply_single_qubit(phi, n, k, bloch_operator(frame.direction(k, static_cast<int>(s))));
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) acc += std::conj(psi[i]) * phi[i];
    return acc.real();
}

double ghz_correlator(int n, std::span<const Direction> active_dirs) {
    if (n < 2) throw std::invalid_argument("GHZ correlator needs n >= 2");
    const int k = static_cast<int>(active_dirs.size());
    if (k > n) throw std::invalid_argument("more active directions than parties");

    double prod_cos = 1.0;
    for (const Direction& d : active_dirs) prod_cos *= d.z;
    double value = (k % 2 == 0) ? prod_cos : 0.0;
    if (k == n) {
        double prod_sin = 1.0;
        double sum_phi = 0.0;
        for (const Direction& d : active_dirs) {
            const Spherical s = spherical(d);
            prod_sin *= s.sin_theta;
            sum_phi += s.phi;
        }
        value += std::cos(sum_phi) * prod_sin;
    }
    return value;
}

CorrelationTensor correlation_tensor(const StateSpec& spec,
                                     const MeasurementFrame& frame,
                                     bool with_marginals) {
    if (frame.num_parties() != spec.num_parties())
        throw std::invalid_argument("frame party count does not match state");
    CorrelationTensor out;
    out.n = spec.num_parties();
    switch (spec.kind()) {
        case StateSpec::Kind::Ghz:
            fill_ghz(spec, frame, with_marginals, out);
            break;
        case StateSpec::Kind::SchmidtPair:
            fill_schmidt_pair(spec.schmidt_theta(), frame, with_marginals, out);
            break;
        default:
            fill_bruteforce(spec, frame, with_marginals, out);
            break;
    }
    return out;
}

}  // namespace bellmc
