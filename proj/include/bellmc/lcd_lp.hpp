// lcd_lp.hpp
// Reduction of "does a locally causal model reproduce these correlators?"
// to a linear feasibility problem, and a deterministic phase-1 simplex that
// answers it.
//
// Variables are the joint probabilities p(o) of one outcome tuple
// o = (o1_1, o1_2, ..., on_1, on_2) per party and setting, packed into a
// 2n-bit column index with o1_1 as the most significant bit and outcome -1
// mapped to bit value 1.  One equality row per setting assignment forces the
// model to match every full correlator and every marginal, and the
// all-marginalized row (code 3^n - 1) is the normalization sum p = 1.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "bellmc/quantum.hpp"

namespace bellmc {

// LP verdicts above n = 6 take 9^n-entry tableaus; callers must opt in.
inline constexpr int kDefaultLpMaxParties = 6;

struct LpProblem {
    int n = 0;
    std::size_t num_vars = 0;  // 4^n
    std::size_t num_rows = 0;  // 3^n
    std::vector<double> a;     // row-major, num_rows x num_vars, entries +/-1
    std::vector<double> b;     // length num_rows
};

// Equality system A x = b, x >= 0 whose feasibility is equivalent to the
// existence of a locally causal model for the tensor.  Requires marginals.
LpProblem build_lcd_lp(const CorrelationTensor& t);

struct FeasibilityResult {
    bool feasible = false;
    double phase1_objective = 0.0;  // residual infeasibility, >= 0
    std::size_t iterations = 0;
    std::vector<double> witness;  // a feasible x when feasible, else empty
};

// Raised when the solver hits its iteration cap or loses numerical footing.
// Callers treat the affected trial as invalid rather than guessing.
class LpSolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Phase-1 simplex with artificial variables.  Deterministic: Dantzig pricing
// with lowest-index tie-breaking, switching to Bland's rule after an
// objective stall, so the same problem always takes the same pivot path.
// Feasible iff the optimal artificial mass is <= 1e-7.
FeasibilityResult lp_feasible(const LpProblem& problem);

// Verdict for one tensor: true means no locally causal model exists (the
// correlations are nonclassical).  Solved in two stages: first the
// subsystem of the 2^n full-tuple rows plus normalization, whose
// infeasibility is already conclusive (adding rows can only raise the
// phase-1 optimum), then the complete 3^n-row system when stage one was
// feasible.  The verdict is identical to solving the complete system
// directly; the staging only skips work on clearly nonclassical trials.
bool lcd_nonclassical(const CorrelationTensor& t);

// End-to-end: tensor with marginals, staged LP solve as above.
bool classicality_verdict(const StateSpec& spec, const MeasurementFrame& frame,
                          int max_parties = kDefaultLpMaxParties);

// Plain-text dump for external solvers / debugging: first line "rows cols",
// then one whitespace-separated line per row of A, then one line of b.
void write_lp_debug(const LpProblem& problem, std::ostream& os);

}  // namespace bellmc
