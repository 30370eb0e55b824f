#pragma once

#include "stochreach/dp.hpp"
#include "stochreach/simplex.hpp"

namespace stochreach {

/// Weighting over states used in LP objectives; must be strictly positive on
/// the region whose values are optimized.
struct CMeasure {
    Vector weight;

    void validate_on(const RegionMask& region) const;
};

CMeasure uniform_measure(int n_states, double value = 1.0);

/// Variable layout of a stage-concatenated value LP: one variable per
/// (stage, member cell).
struct VariableMap {
    int horizon = 0;
    int n_states = 0;
    std::vector<std::pair<int, int>> var_to_stage_cell;
    IntMatrix var_of;  // (N+1) x n_states; -1 where no variable exists

    int var(int stage, int cell) const { return var_of(stage, cell); }
};

struct BuiltLp {
    LinearProgram lp;
    VariableMap vars;
    ValueKind kind = ValueKind::PolicyEval;
};

/// Stage-concatenated invariance LPs over the safe cells:
///   max case: minimize sum_k c'V_k  s.t.  V_k(x) >= E_u[V_{k+1}], V_N = 1;
///   min case: maximize with <= constraints.
/// value_upper_bound widens the [0,1] variable box for bound-sensitivity
/// experiments.
BuiltLp build_max_invariance_lp(const TransitionModel& model, const RegionMask& safe,
                                Horizon horizon, const CMeasure& c,
                                double value_upper_bound = 1.0);
BuiltLp build_min_invariance_lp(const TransitionModel& model, const RegionMask& safe,
                                Horizon horizon, const CMeasure& c,
                                double value_upper_bound = 1.0);

/// Stage-concatenated reach-avoid LP over the cells of safe minus target;
/// the one-step probability mass on the target enters the right-hand sides.
BuiltLp build_reach_avoid_lp(const TransitionModel& model, const RegionMask& safe,
                             const RegionMask& target, Horizon horizon, const CMeasure& c,
                             double value_upper_bound = 1.0);

/// One-stage state-action value LP: one variable per (safe cell, action),
/// each constrained against the known next-stage integral. value_sense picks
/// which extremum the stage value takes over actions (and orients the LP so
/// the constraints are tight at the optimum).
struct StageQLp {
    LinearProgram lp;
    IntMatrix var_of;  // n_states x n_actions; -1 off the safe set
    std::vector<std::pair<int, int>> var_to_cell_action;
    Sense value_sense = Sense::Maximize;
};

StageQLp build_q_stage_lp(const TransitionModel& model, const RegionMask& safe,
                          const Vector& v_next, Sense value_sense, const Matrix& c_xu);

/// One-stage reach-avoid value LP over safe-minus-target cells; v_next must
/// already carry the pinned boundary (1 on target, 0 off safe).
struct StageVLp {
    LinearProgram lp;
    IntVector var_of;  // per state; -1 where pinned
    std::vector<int> var_to_cell;
};

StageVLp build_reach_avoid_stage_lp(const TransitionModel& model, const RegionMask& safe,
                                    const RegionMask& target, const Vector& v_next,
                                    const CMeasure& c);

/// Reassembles a solved concatenated LP into a value table, filling pinned
/// cells from the kind's boundary rules. Throws if the report is not optimal.
ValueTable assemble_value_table(const SolveReport& report, const BuiltLp& built,
                                const RegionMask& safe, const RegionMask* target = nullptr);

struct StageQSolution {
    Vector values;      // per state; extremum over actions, 0 off the safe set
    IntVector actions;  // per state; extremizing action, lowest index on ties
    Matrix q;           // n_states x n_actions; LP solution, 0 off the safe set
};

StageQSolution extract_stage_values(const StageQLp& built, const SolveReport& report,
                                    const RegionMask& safe);

/// End-to-end LP drivers; each solves with the internal simplex and returns
/// assembled tables. Empty regions short-circuit to the boundary-only table.
ValueTable solve_invariance_lp(const TransitionModel& model, const RegionMask& safe,
                               Horizon horizon, const CMeasure& c, Sense sense,
                               const SimplexOptions& opts = {});
ValueTable solve_reach_avoid_lp(const TransitionModel& model, const RegionMask& safe,
                                const RegionMask& target, Horizon horizon, const CMeasure& c,
                                const SimplexOptions& opts = {});
InvarianceSolution solve_invariance_stagewise_lp(const TransitionModel& model,
                                                 const RegionMask& safe, Horizon horizon,
                                                 Sense sense, const SimplexOptions& opts = {});
ValueTable solve_reach_avoid_stagewise_lp(const TransitionModel& model, const RegionMask& safe,
                                          const RegionMask& target, Horizon horizon,
                                          const CMeasure& c, const SimplexOptions& opts = {});

}  // namespace stochreach
