#pragma once

#include "stochreach/model.hpp"

namespace stochreach {

enum class ValueKind {
    MaxInvariance,
    MinInvariance,
    MaxReach,
    MinReach,
    ReachAvoid,
    PolicyEval,
};

const char* to_string(ValueKind kind);
ValueKind value_kind_from_string(const std::string& s);

/// Stage-indexed value function over model states. Row k holds the values at
/// stage k; row horizon() is the terminal stage.
struct ValueTable {
    ValueKind kind = ValueKind::PolicyEval;
    Matrix values;  // (N+1) x n_states

    int horizon() const { return static_cast<int>(values.rows()) - 1; }
    int n_states() const { return static_cast<int>(values.cols()); }
    double at(int stage, int state) const { return values(stage, state); }
};

/// Pre-extremum stage state-action values; stage_q[k] is n_states x n_actions.
struct QTable {
    std::vector<Matrix> stage_q;

    int horizon() const { return static_cast<int>(stage_q.size()); }
};

/// Deterministic Markov policy; row k maps each state to an action index.
struct PolicyTable {
    IntMatrix actions;  // N x n_states

    int horizon() const { return static_cast<int>(actions.rows()); }
    int n_states() const { return static_cast<int>(actions.cols()); }
    int action(int stage, int state) const { return actions(stage, state); }
};

struct InvarianceSolution {
    ValueTable values;
    PolicyTable policy;
    QTable q;
};

struct ReachAvoidSolution {
    ValueTable values;
    PolicyTable policy;
};

/// Probability of staying in `safe` for the whole horizon under the given
/// policy: V_N = 1_A, V_k = 1_A * E[V_{k+1}].
ValueTable evaluate_policy(const TransitionModel& model, const RegionMask& safe,
                           const PolicyTable& policy, Horizon horizon);

/// Best/worst achievable probability of remaining in `safe`. Uses the
/// restricted backward recursion over safe cells; values are zero elsewhere.
/// Extremum ties resolve to the lowest action index.
InvarianceSolution max_invariance(const TransitionModel& model, const RegionMask& safe,
                                  Horizon horizon);
InvarianceSolution min_invariance(const TransitionModel& model, const RegionMask& safe,
                                  Horizon horizon);

/// Best/worst achievable probability of entering `target` at least once,
/// computed as one minus the opposite invariance of the complement.
ValueTable max_reachability(const TransitionModel& model, const RegionMask& target,
                            Horizon horizon);
ValueTable min_reachability(const TransitionModel& model, const RegionMask& target,
                            Horizon horizon);

/// Best achievable probability of reaching `target` while staying in `safe`.
/// Values are pinned to 1 on the target and 0 outside the safe set at every
/// stage; the terminal stage is 0 in between.
ReachAvoidSolution reach_avoid(const TransitionModel& model, const RegionMask& safe,
                               const RegionMask& target, Horizon horizon);

/// States whose stage-k value is at least p.
RegionMask level_set(const ValueTable& table, int stage, double p);

/// Enforces the kind-specific range and boundary invariants; throws on
/// violation. `safe`/`target` may be null when the kind does not use them.
void validate_value_table(const ValueTable& table, const RegionMask* safe,
                          const RegionMask* target, double tol = 1e-12);

}  // namespace stochreach
