#pragma once

#include "stochreach/harness.hpp"
#include "stochreach/model.hpp"
#include "stochreach/simplex.hpp"

namespace stochreach {

/// Gaussian radial-basis value approximation: value(x) = sum_j w_j *
/// exp(-epsilon^2 * |x - c_j|^2), with one weight vector per fitted stage.
struct RbfModel {
    Matrix centers;  // B x dim
    double epsilon = 1.0;
    int horizon = 0;
    Matrix weights;                // horizon rows (stages 0..N-1), B cols
    std::vector<char> has_weights;  // per stage

    int basis_count() const { return static_cast<int>(centers.rows()); }
    Vector features(const Vector& x) const;
    void validate() const;
};

/// Centers evenly placed over the box, per-axis count `per_axis`, offset half
/// a spacing from the edges.
RbfModel make_rbf_grid(const Vector& lower, const Vector& upper, int per_axis, double epsilon,
                       int horizon);

/// Raw weighted-sum evaluation; no clamping. Requires fitted stage weights.
double rbf_eval(const RbfModel& model, int stage, const Vector& x);

/// Sampled reach-avoid fitting problem. The samplers receive the constraint
/// indices so tests can enumerate exact sample sets; production samplers
/// ignore them and draw from the stream.
struct ReachAvoidFitProblem {
    Simulator dynamics;
    std::function<bool(const Vector&)> in_safe;
    std::function<bool(const Vector&)> in_target;
    std::function<Vector(int state_index, CounterRng&)> sample_state;
    std::function<Vector(int state_index, int input_index, CounterRng&)> sample_input;
};

struct ConstraintSample {
    int n_states = 800;
    int n_inputs = 30;
    int n_noise = 15;
    std::uint64_t seed = 1;
};

struct StageFit {
    Vector weights;
    std::vector<Vector> states;  // sampled constraint states
    double objective = 0.0;
    long iterations = 0;
};

/// Fits one stage of the reach-avoid value function: minimizes the weighted
/// sum of the approximant over the sampled states subject to one constraint
/// per sampled (state, input) pair, whose right-hand side is the empirical
/// mean of the pinned next-stage value over the shared noise draws.
StageFit fit_stage_reach_avoid(const ReachAvoidFitProblem& problem, const RbfModel& model,
                               const std::function<double(const Vector&)>& v_next_raw,
                               const ConstraintSample& sample, std::uint64_t stage_key,
                               const SimplexOptions& opts = {});

struct StageFitStats {
    int stage = 0;
    double objective = 0.0;
    long iterations = 0;
    int monotonicity_violations = 0;  // sampled states with V_k < V_{k+1} - slack
};

struct RbfFitReport {
    std::vector<StageFitStats> stages;
    double monotonicity_slack = 0.05;
};

/// Backward pass fitting stages N-1 down to 0; the terminal stage is the
/// pinned boundary (1 on target, 0 elsewhere). With resample_per_stage the
/// constraint sample is redrawn each stage, otherwise reused.
RbfFitReport backward_fit(RbfModel& model, const ReachAvoidFitProblem& problem,
                          const ConstraintSample& sample, bool resample_per_stage = true,
                          const SimplexOptions& opts = {});

/// Reach-avoid boundary rules applied to an approximant value.
double pinned_reach_avoid_value(const ReachAvoidFitProblem& problem, const Vector& x,
                                double raw_value);

/// Error-study adapter: clamped evaluation with the reach-avoid boundary
/// (1 on target, 0 off safe, terminal stage 0 in between).
class RbfEvaluable : public Evaluable {
  public:
    RbfEvaluable(RbfModel model, std::function<bool(const Vector&)> in_safe,
                 std::function<bool(const Vector&)> in_target);
    int horizon() const override { return model_.horizon; }
    double value_at(int stage, const Vector& point) const override;

  private:
    RbfModel model_;
    std::function<bool(const Vector&)> in_safe_, in_target_;
};

}  // namespace stochreach
