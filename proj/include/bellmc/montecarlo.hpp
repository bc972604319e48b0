// montecarlo.hpp
// Trial orchestration: one RNG stream per trial, criteria evaluation, and
// deterministic aggregation.  Results are bit-identical for a given
// (config, master_seed) regardless of thread count, because trials are
// reduced in fixed chunk order no matter which thread ran them.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bellmc/lcd_lp.hpp"
#include "bellmc/sampling.hpp"
#include "bellmc/state.hpp"

namespace bellmc {

enum class Criterion {
    MabkSingle,  // |value| of the one standard MABK inequality
    MabkOrbit,   // best |value| over the full relabeling orbit
    Wwzb,        // nonlinear sum |Ehat| criterion
    Lp,          // locally-causal-model feasibility via phase-1 simplex
};

const char* criterion_name(Criterion c);
const char* mode_name(SamplingMode m);

struct ExperimentConfig {
    int n = 2;
    // Fixed state for every trial; empty means "draw a fresh random pure
    // two-qubit state per trial" (Hilbert-Schmidt Schmidt angle), n must be 2.
    std::optional<StateSpec> state;
    SamplingMode mode = SamplingMode::Rim;
    std::vector<Criterion> criteria;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    int lp_max_parties = kDefaultLpMaxParties;
    int threads = 0;  // 0 = hardware concurrency
};

struct TrialVerdict {
    bool valid = true;  // false when the LP solver gave up on this trial
    bool mabk_single = false;
    bool mabk_orbit = false;
    bool wwzb = false;
    bool lp_nonclassical = false;
    bool lp_evaluated = false;
    double mabk_single_value = 0.0;
    double mabk_orbit_value = 0.0;
    double wwzb_lhs = 0.0;
    // Schmidt angle of this trial's state when one was drawn, else the
    // configured angle or NaN for non-Schmidt states.
    double schmidt_theta = 0.0;
};

// Runs one trial on stream trial_index: draw the state (if random), draw the
// frame, evaluate every requested criterion, and assert the implication
// chain single => orbit => wwzb => lp on the way out.  A chain violation
// throws std::logic_error since it can only mean an implementation bug.
TrialVerdict run_trial(const ExperimentConfig& config, std::uint64_t trial_index);

struct EstimateRecord {
    Criterion criterion{};
    int n = 0;
    SamplingMode mode{};
    double p_hat = 0.0;
    double stderr_value = 0.0;  // sqrt(p (1 - p) / trials)
    double wilson_low = 0.0;    // Wilson 95% interval
    double wilson_high = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;  // valid trials only
    std::uint64_t invalid_trials = 0;
    std::uint64_t master_seed = 0;
};

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

WilsonInterval wilson95(std::uint64_t hits, std::uint64_t trials);

// Estimator arithmetic in one place, also reachable from tests that feed it
// synthetic counts.
EstimateRecord make_estimate_record(Criterion criterion, std::uint64_t hits,
                                    std::uint64_t valid_trials,
                                    std::uint64_t invalid_trials,
                                    const ExperimentConfig& config);

// Mean normalized size of the violations seen by the MABK_SINGLE criterion.
struct ViolationStats {
    std::uint64_t violating_trials = 0;
    double mean_over_classical_bound = 0.0;  // mean of |value| / 2^(n - 1/2)
    double mean_over_quantum_max = 0.0;      // mean of |value| / 2^(3n/2 - 1)
};

struct EstimateSummary {
    // One record per requested criterion, in fixed enum order.
    std::vector<EstimateRecord> records;
    // Populated when MABK_SINGLE was requested.
    ViolationStats single_stats;
};

// Raised when more than 0.1% of trials were invalidated by solver failures;
// an estimate from such a run would be silently biased.
class TooManyInvalidTrials : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

EstimateSummary estimate(const ExperimentConfig& config);

struct SweepPoint {
    double theta = 0.0;
    EstimateRecord rim;
    EstimateRecord rom;
};

// MABK_ORBIT violation probability of the Schmidt pair at each angle, under
// both sampling modes.  Trials, seed and threads come from base.
std::vector<SweepPoint> entanglement_sweep(std::span<const double> thetas,
                                           const ExperimentConfig& base);

struct RandomStateResult {
    EstimateRecord rim;
    EstimateRecord rom;
};

// MABK_ORBIT violation probability of a random pure two-qubit state per
// trial, under both sampling modes.
RandomStateResult random_state_probability(const ExperimentConfig& base);

}  // namespace bellmc
