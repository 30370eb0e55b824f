#pragma once

#include "stochreach/dp.hpp"

#include <string>

namespace stochreach {

/// Exact optima obtained by exhaustive enumeration of deterministic Markov
/// policies, one objective at a time. Each vector holds the stage-0 value per
/// start state. Policies are enumerated only over the states whose action can
/// influence the objective; the counts record how many were evaluated.
struct OracleResult {
    Vector max_invariance, min_invariance;
    Vector max_reachability, min_reachability;
    Vector max_reach_avoid, min_reach_avoid;
    long long policies_invariance = 0;
    long long policies_reachability = 0;
    long long policies_reach_avoid = 0;
};

/// Brute-force oracle for tiny instances. Guards: n_states <= 6,
/// n_actions <= 3, horizon <= 4, and the per-objective policy count must stay
/// below an enumeration cap; throws otherwise.
OracleResult enumerate_policies(const TransitionModel& model, const RegionMask& safe,
                                const RegionMask& target, Horizon horizon);

struct RandomInstance {
    TransitionModel model;
    RegionMask safe;
    RegionMask target;  // non-empty subset of safe
};

/// Seeded random MDP with Dirichlet(1,...,1) rows and random non-empty masks.
RandomInstance random_instance(std::uint64_t seed, int n_states, int n_actions);

/// A stage-indexed value field evaluable at arbitrary points, the common face
/// of gridded tables and basis-function approximants for the error study.
class Evaluable {
  public:
    virtual ~Evaluable() = default;
    virtual int horizon() const = 0;
    virtual double value_at(int stage, const Vector& point) const = 0;
};

/// Piecewise-constant lookup of a gridded value table; points outside the
/// grid read the out-of-domain cell.
class GridTableEvaluable : public Evaluable {
  public:
    GridTableEvaluable(ValueTable table, StateGrid grid);
    int horizon() const override { return table_.horizon(); }
    double value_at(int stage, const Vector& point) const override;
    const ValueTable& table() const { return table_; }
    const StateGrid& grid() const { return grid_; }

  private:
    ValueTable table_;
    StateGrid grid_;
};

/// Per-timestep-offset two-norm distances between candidate value fields and
/// a reference, evaluated at shared points. distance(m, j) compares stage
/// N - j of candidate m against the reference.
struct ErrorReport {
    std::vector<std::string> methods;
    Matrix distances;  // methods x (N+1); column j = timestep offset j

    void validate() const;
};

ErrorReport error_study(const Evaluable& reference,
                        const std::vector<std::pair<std::string, const Evaluable*>>& candidates,
                        const std::vector<Vector>& eval_points);

/// Wall-clock measurements per configuration.
struct TimedRun {
    std::string name;
    double seconds = 0.0;
};

/// Full-scale measurements of this benchmark family reported from an external
/// reference run on other hardware (20 time steps). Context only; tests never
/// assert these.
struct ExternalReferenceFigures {
    static constexpr double grid100_seconds = 90.0;
    static constexpr double grid25_seconds = 4.0;
    static constexpr double rbf5_seconds = 27.0;
    static constexpr double rbf20_seconds = 5355.0;
    // Distance-to-finest-grid at timestep offset 20 in the same run.
    static constexpr double rbf5_distance_at_20 = 68.149624;
    static constexpr double rbf10_distance_at_20 = 35.414818;
    static constexpr double rbf15_distance_at_20 = 26.435041;
    static constexpr double rbf20_distance_at_20 = 24.170556;
    static constexpr double grid25_distance_at_20 = 21.786087;
    static constexpr double grid50_distance_at_20 = 1.691402;
    static constexpr double grid75_distance_at_20 = 3.465376;
};

}  // namespace stochreach
