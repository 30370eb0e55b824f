#pragma once

#include "stochreach/linear_program.hpp"

namespace stochreach {

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit, SingularBasis };

const char* to_string(SolveStatus status);

struct SolveReport {
    SolveStatus status = SolveStatus::IterationLimit;
    double objective = std::numeric_limits<double>::quiet_NaN();
    Vector solution;  // structural variables; empty unless Optimal
    long iterations = 0;
};

struct SimplexOptions {
    double tol = 1e-9;            // feasibility and reduced-cost tolerance
    double pivot_tol = 1e-10;     // smallest acceptable pivot magnitude
    long max_iterations = 0;      // 0 = automatic limit from problem size
    bool merge_duplicate_rows = true;
};

/// Dense bounded-variable primal simplex, two phases, Bland's rule for both
/// the entering and leaving choice. Deterministic: identical inputs produce
/// bit-identical reports. Intended for desk-scale programs.
SolveReport solve(const LinearProgram& lp, const SimplexOptions& opts = {});

}  // namespace stochreach
