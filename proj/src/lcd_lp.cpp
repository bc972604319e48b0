// lcd_lp.cpp
// LP construction and the phase-1 simplex.

#include "bellmc/lcd_lp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

#include "bellmc/output.hpp"

namespace bellmc {

namespace {

// Pivot eligibility / reduced-cost threshold.
constexpr double kPivotTol = 1e-9;
// Optimal artificial mass at or below this counts as feasible.
constexpr double kFeasibilityTol = 1e-7;
// Artificial mass provably below tolerance; stop early, verdict cannot change.
constexpr double kEarlyStop = 1e-9;
// Objective decreases smaller than this count as a stall step.
constexpr double kStallTol = 1e-13;

}  // namespace

LpProblem build_lcd_lp(const CorrelationTensor& t) {
    if (!t.has_marginals())
        throw std::invalid_argument("LP construction needs the marginal correlators");
    const int n = t.n;
    LpProblem p;
    p.n = n;
    p.num_vars = std::size_t{1} << (2 * n);
    p.num_rows = pow3(n);
    p.a.resize(p.num_rows * p.num_vars);
    p.b = t.marginals;

    for (std::size_t code = 0; code < p.num_rows; ++code) {
        // Mask of outcome bits that multiply into this row's correlator: one
        // bit per active party, selected by that party's setting digit.
        std::size_t mask = 0;
        std::size_t rest = code;
        for (int k = n; k-- > 0;) {
            const int digit = static_cast<int>(rest % 3);
            rest /= 3;
            if (digit < 2)
                mask |= std::size_t{1} << (2 * n - 1 - (2 * k + digit));
        }
        double* row = &p.a[code * p.num_vars];
        for (std::size_t v = 0; v < p.num_vars; ++v)
            row[v] = (std::popcount(v & mask) & 1) ? -1.0 : 1.0;
    }
    return p;
}

FeasibilityResult lp_feasible(const LpProblem& p) {
    const std::size_t m = p.num_rows;
    const std::size_t d = p.num_vars;
    const std::size_t width = d + 1;  // trailing column is the rhs

    // Rows are sign-adjusted so every rhs is nonnegative and the artificial
    // variables can start as an identity basis (kept implicit: an artificial
    // never re-enters once it leaves, so its column is never needed).
    std::vector<double> tab(m * width);
    for (std::size_t r = 0; r < m; ++r) {
        const double sign = (p.b[r] < 0.0) ? -1.0 : 1.0;
        double* row = &tab[r * width];
        const double* src = &p.a[r * d];
        for (std::size_t j = 0; j < d; ++j) row[j] = sign * src[j];
        row[d] = sign * p.b[r];
    }

    // Reduced-cost row for minimizing the artificial sum: z_j = sum_r a_rj,
    // z_rhs = current objective.  Pivoting keeps both up to date.
    std::vector<double> z(width, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const double* row = &tab[r * width];
        for (std::size_t j = 0; j < width; ++j) z[j] += row[j];
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = d + r;

    const std::size_t max_iterations = 50 * (d + m);
    std::size_t iterations = 0;
    std::size_t stall_steps = 0;
    bool bland = false;
    double prev_objective = z[d];

    while (z[d] > kEarlyStop) {
        // Entering column.
        std::size_t je = d;
        if (bland) {
            for (std::size_t j = 0; j < d; ++j)
                if (z[j] > kPivotTol) {
                    je = j;
                    break;
                }
        } else {
            double best = kPivotTol;
            for (std::size_t j = 0; j < d; ++j)
                if (z[j] > best) {
                    best = z[j];
                    je = j;
                }
        }
        if (je == d) break;  // optimal

        // Ratio test; ties go to the smallest basis id, which together with
        // Bland pricing guarantees termination on degenerate problems.
        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            const double piv = tab[r * width + je];
            if (piv <= kPivotTol) continue;
            const double ratio = tab[r * width + d] / piv;
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == m)
            throw LpSolverError("phase-1 pivot column is unbounded");

        // Pivot.
        double* prow = &tab[leave * width];
        const double inv = 1.0 / prow[je];
        for (std::size_t j = 0; j < width; ++j) prow[j] *= inv;
        prow[je] = 1.0;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave) continue;
            double* row = &tab[r * width];
            const double f = row[je];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) row[j] -= f * prow[j];
            row[je] = 0.0;
        }
        {
            const double f = z[je];
            for (std::size_t j = 0; j < width; ++j) z[j] -= f * prow[j];
            z[je] = 0.0;
        }
        basis[leave] = je;

        if (++iterations > max_iterations)
            throw LpSolverError("phase-1 iteration cap exceeded");
        if (prev_objective - z[d] <= kStallTol) {
            if (++stall_steps > 3 * m) bland = true;
        } else {
            stall_steps = 0;
        }
        prev_objective = z[d];
    }

    FeasibilityResult res;
    res.phase1_objective = std::max(0.0, z[d]);
    res.iterations = iterations;
    res.feasible = res.phase1_objective <= kFeasibilityTol;
    if (res.feasible) {
        res.witness.assign(d, 0.0);
        for (std::size_t r = 0; r < m; ++r)
            if (basis[r] < d) res.witness[basis[r]] = tab[r * width + d];
    }
    return res;
}

namespace {

// Stage-one subsystem: one row per full setting tuple plus the
// normalization row.
LpProblem build_full_tuple_rows(const CorrelationTensor& t) {
    const int n = t.n;
    LpProblem p;
    p.n = n;
    p.num_vars = std::size_t{1} << (2 * n);
    const std::size_t tuples = std::size_t{1} << n;
    p.num_rows = tuples + 1;
    p.a.resize(p.num_rows * p.num_vars);
    p.b.resize(p.num_rows);
    for (std::size_t sigma = 0; sigma < tuples; ++sigma) {
        std::size_t mask = 0;
        for (int k = 0; k < n; ++k) {
            const std::size_t digit = (sigma >> (n - 1 - k)) & 1;
            mask |= std::size_t{1} << (2 * n - 1 - (2 * k + digit));
        }
        double* row = &p.a[sigma * p.num_vars];
        for (std::size_t v = 0; v < p.num_vars; ++v)
            row[v] = (std::popcount(v & mask) & 1) ? -1.0 : 1.0;
        p.b[sigma] = t.full[sigma];
    }
    double* norm = &p.a[tuples * p.num_vars];
    for (std::size_t v = 0; v < p.num_vars; ++v) norm[v] = 1.0;
    p.b[tuples] = 1.0;
    return p;
}

}  // namespace

bool lcd_nonclassical(const CorrelationTensor& t) {
    if (!lp_feasible(build_full_tuple_rows(t)).feasible) return true;
    return !lp_feasible(build_lcd_lp(t)).feasible;
}

bool classicality_verdict(const StateSpec& spec, const MeasurementFrame& frame,
                          int max_parties) {
    if (spec.num_parties() > max_parties)
        throw std::length_error("LP verdict beyond the configured party cap");
    return lcd_nonclassical(correlation_tensor(spec, frame, true));
}

void write_lp_debug(const LpProblem& p, std::ostream& os) {
    os << p.num_rows << ' ' << p.num_vars << '\n';
    for (std::size_t r = 0; r < p.num_rows; ++r) {
        const double* row = &p.a[r * p.num_vars];
        for (std::size_t j = 0; j < p.num_vars; ++j) {
            if (j) os << ' ';
            os << format_double(row[j]);
        }
        os << '\n';
    }
    for (std::size_t r = 0; r < p.num_rows; ++r) {
        if (r) os << ' ';
        os << format_double(p.b[r]);
    }
    os << '\n';
}

}  // namespace bellmc
