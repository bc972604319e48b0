// montecarlo.cpp

#include "bellmc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "bellmc/inequalities.hpp"

namespace bellmc {

namespace {

// Trials are grouped into fixed-size chunks that are reduced in index order,
// so the aggregate (including its floating-point sums) does not depend on
// how chunks were distributed over threads.
constexpr std::uint64_t kChunkSize = 1024;

// The WWZB threshold works at 1e-9 while the LP feasibility tolerance is
// 1e-7, so close to the boundary the two can legitimately disagree; the
// wwzb => lp implication is only asserted outside this band.
constexpr double kChainBand = 2e-5;

constexpr double kInvalidTrialBudget = 1e-3;

const Criterion kAllCriteria[] = {Criterion::MabkSingle, Criterion::MabkOrbit,
                                  Criterion::Wwzb, Criterion::Lp};

bool wants(const ExperimentConfig& cfg, Criterion c) {
    return std::find(cfg.criteria.begin(), cfg.criteria.end(), c) !=
           cfg.criteria.end();
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("experiments need n >= 2");
    if (cfg.state) {
        if (cfg.state->num_parties() != cfg.n)
            throw std::invalid_argument("config n does not match the state");
    } else if (cfg.n != 2) {
        throw std::invalid_argument("random pure states are two-qubit only");
    }
    if (cfg.criteria.empty())
        throw std::invalid_argument("no criteria requested");
    if (wants(cfg, Criterion::Lp) && cfg.n > cfg.lp_max_parties)
        throw std::invalid_argument("LP criterion beyond the configured party cap");
    if (cfg.trials == 0) throw std::invalid_argument("need at least one trial");
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct ChunkAccum {
    std::uint64_t hits[4] = {0, 0, 0, 0};
    std::uint64_t valid = 0;
    std::uint64_t invalid = 0;
    std::uint64_t single_violators = 0;
    double sum_over_classical = 0.0;
    double sum_over_quantum = 0.0;
};

}  // namespace

const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::MabkSingle: return "mabk-single";
        case Criterion::MabkOrbit: return "mabk-orbit";
        case Criterion::Wwzb: return "wwzb";
        case Criterion::Lp: return "lp";
    }
    throw std::logic_error("unhandled criterion");
}

const char* mode_name(SamplingMode m) {
    return m == SamplingMode::Rim ? "rim" : "rom";
}

TrialVerdict run_trial(const ExperimentConfig& config, std::uint64_t trial_index) {
    validate_config(config);
    RngStream rng(config.master_seed, trial_index);

    TrialVerdict v;
    StateSpec spec = [&] {
        if (config.state) return *config.state;
        return StateSpec::schmidt_pair(sample_schmidt_angle(rng));
    }();
    v.schmidt_theta = (spec.kind() == StateSpec::Kind::SchmidtPair)
                          ? spec.schmidt_theta()
                          : std::numeric_limits<double>::quiet_NaN();

    const MeasurementFrame frame = sample_frame(rng, config.n, config.mode);
    const bool need_lp = wants(config, Criterion::Lp);
    const CorrelationTensor tensor = correlation_tensor(spec, frame, need_lp);

    const CorrelationCriteria crit = evaluate_criteria(tensor);
    const double classical = mabk_classical_bound(config.n);
    const double wwzb_bound = static_cast<double>(std::size_t{1} << config.n);
    v.mabk_single_value = crit.mabk_single;
    v.mabk_orbit_value = crit.mabk_orbit_best;
    v.wwzb_lhs = crit.wwzb_lhs;
    v.mabk_single = crit.mabk_single > classical + kViolationTolerance;
    v.mabk_orbit = crit.mabk_orbit_best > classical + kViolationTolerance;
    v.wwzb = crit.wwzb_lhs > wwzb_bound + kViolationTolerance;

    if (need_lp) {
        try {
            v.lp_nonclassical = lcd_nonclassical(tensor);
            v.lp_evaluated = true;
        } catch (const LpSolverError&) {
            v.valid = false;
            return v;
        }
    }

    // Implication chain.  The first two hold with floating-point slack to
    // spare; the last is asserted only outside the tolerance band.
    if (v.mabk_single && !v.mabk_orbit)
        throw std::logic_error("criteria chain broken: single without orbit");
    if (v.mabk_orbit && !v.wwzb)
        throw std::logic_error("criteria chain broken: orbit without wwzb");
    if (v.lp_evaluated && v.wwzb && !v.lp_nonclassical &&
        v.wwzb_lhs > wwzb_bound + kChainBand)
        throw std::logic_error("criteria chain broken: wwzb without lp");
    return v;
}

WilsonInterval wilson95(std::uint64_t hits, std::uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("Wilson interval needs trials > 0");
    constexpr double z = 1.959963984540054;  // symmetric 95% normal quantile
    const double nn = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / nn;
    const double z2n = z * z / nn;
    const double denom = 1.0 + z2n;
    const double center = (p + z2n / 2.0) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / nn + z2n / (4.0 * nn)) / denom;
    // At the boundary counts the exact endpoints are 0 and 1; computing them
    // through center/half leaves roundoff of a few ulp, so snap instead.
    const double low = hits == 0 ? 0.0 : std::max(0.0, center - half);
    const double high = hits == trials ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

EstimateRecord make_estimate_record(Criterion criterion, std::uint64_t hits,
                                    std::uint64_t valid_trials,
                                    std::uint64_t invalid_trials,
                                    const ExperimentConfig& config) {
    if (valid_trials == 0)
        throw std::runtime_error("no valid trials to estimate from");
    EstimateRecord r;
    r.criterion = criterion;
    r.n = config.n;
    r.mode = config.mode;
    r.hits = hits;
    r.trials = valid_trials;
    r.invalid_trials = invalid_trials;
    r.master_seed = config.master_seed;
    r.p_hat = static_cast<double>(hits) / static_cast<double>(valid_trials);
    r.stderr_value =
        std::sqrt(r.p_hat * (1.0 - r.p_hat) / static_cast<double>(valid_trials));
    const WilsonInterval w = wilson95(hits, valid_trials);
    r.wilson_low = w.low;
    r.wilson_high = w.high;
    return r;
}

EstimateSummary estimate(const ExperimentConfig& config) {
    validate_config(config);
    const std::uint64_t num_chunks = (config.trials + kChunkSize - 1) / kChunkSize;
    std::vector<ChunkAccum> chunks(num_chunks);

    auto run_chunk = [&](std::uint64_t c) {
        ChunkAccum& acc = chunks[c];
        const std::uint64_t end = std::min(config.trials, (c + 1) * kChunkSize);
        for (std::uint64_t i = c * kChunkSize; i < end; ++i) {
            const TrialVerdict v = run_trial(config, i);
            if (!v.valid) {
                ++acc.invalid;
                continue;
            }
            ++acc.valid;
            acc.hits[0] += v.mabk_single;
            acc.hits[1] += v.mabk_orbit;
            acc.hits[2] += v.wwzb;
            acc.hits[3] += v.lp_nonclassical;
            if (v.mabk_single) {
                ++acc.single_violators;
                acc.sum_over_classical +=
                    v.mabk_single_value / mabk_classical_bound(config.n);
                acc.sum_over_quantum +=
                    v.mabk_single_value / mabk_quantum_max(config.n);
            }
        }
    };

    const int threads =
        static_cast<int>(std::min<std::uint64_t>(resolve_threads(config.threads),
                                                 num_chunks));
    if (threads <= 1) {
        for (std::uint64_t c = 0; c < num_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mu;
        auto worker = [&] {
            try {
                for (std::uint64_t c = next.fetch_add(1); c < num_chunks;
                     c = next.fetch_add(1))
                    run_chunk(c);
            } catch (...) {
                std::scoped_lock lock(error_mu);
                if (!first_error) first_error = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    ChunkAccum total;
    for (const ChunkAccum& acc : chunks) {
        for (int i = 0; i < 4; ++i) total.hits[i] += acc.hits[i];
        total.valid += acc.valid;
        total.invalid += acc.invalid;
        total.single_violators += acc.single_violators;
        total.sum_over_classical += acc.sum_over_classical;
        total.sum_over_quantum += acc.sum_over_quantum;
    }

    if (static_cast<double>(total.invalid) >
        kInvalidTrialBudget * static_cast<double>(config.trials))
        throw TooManyInvalidTrials("more than 0.1% of trials hit solver failures");

    EstimateSummary out;
    for (const Criterion c : kAllCriteria) {
        if (!wants(config, c)) continue;
        out.records.push_back(make_estimate_record(
            c, total.hits[static_cast<int>(c)], total.valid, total.invalid,
            config));
    }
    if (wants(config, Criterion::MabkSingle) && total.single_violators > 0) {
        const double nv = static_cast<double>(total.single_violators);
        out.single_stats.violating_trials = total.single_violators;
        out.single_stats.mean_over_classical_bound = total.sum_over_classical / nv;
        out.single_stats.mean_over_quantum_max = total.sum_over_quantum / nv;
    }
    return out;
}

std::vector<SweepPoint> entanglement_sweep(std::span<const double> thetas,
                                           const ExperimentConfig& base) {
    std::vector<SweepPoint> points;
    points.reserve(thetas.size());
    for (const double theta : thetas) {
        ExperimentConfig cfg = base;
        cfg.n = 2;
        cfg.state = StateSpec::schmidt_pair(theta);
        cfg.criteria = {Criterion::MabkOrbit};
        SweepPoint pt;
        pt.theta = theta;
        cfg.mode = SamplingMode::Rim;
        pt.rim = estimate(cfg).records.front();
        cfg.mode = SamplingMode::Rom;
        pt.rom = estimate(cfg).records.front();
        points.push_back(pt);
    }
    return points;
}

RandomStateResult random_state_probability(const ExperimentConfig& base) {
    ExperimentConfig cfg = base;
    cfg.n = 2;
    cfg.state.reset();
    cfg.criteria = {Criterion::MabkOrbit};
    RandomStateResult res;
    cfg.mode = SamplingMode::Rim;
    res.rim = estimate(cfg).records.front();
    cfg.mode = SamplingMode::Rom;
    res.rom = estimate(cfg).records.front();
    return res;
}

}  // namespace bellmc
