#pragma once

#include "stochreach/grid.hpp"
#include "stochreach/rng.hpp"

namespace stochreach {

/// Finite set of action vectors, one per row.
struct ActionSet {
    Matrix actions;  // n_actions x action_dim

    int count() const { return static_cast<int>(actions.rows()); }
    Vector action(int a) const { return actions.row(a).transpose(); }
    void validate() const;
};

/// Headings 2*pi*i/n for i = 1..n; excludes 0, includes 2*pi.
ActionSet heading_actions(int n);

/// Horizon length (number of transition steps), >= 0.
using Horizon = int;

/// Finite-state, finite-action row-stochastic transition kernel. Row (a, x)
/// gives the distribution of the next state under action a from state x.
class TransitionModel {
  public:
    TransitionModel() = default;
    TransitionModel(int n_states, std::vector<SparseMatrix> kernel);

    int n_states() const { return n_states_; }
    int n_actions() const { return static_cast<int>(kernel_.size()); }
    const SparseMatrix& matrix(int action) const { return kernel_[static_cast<size_t>(action)]; }
    double prob(int action, int from, int to) const;

    /// Expected value of v after one step: (apply(a, v))[x] = sum_x' T(x'|x,a) v[x'].
    Vector apply(int action, const Vector& v) const;

    /// Checks entries in [0,1] and row sums within tol of 1.
    void validate(double tol = 1e-9) const;

  private:
    int n_states_ = 0;
    std::vector<SparseMatrix> kernel_;
};

/// Maps (state, action, noise stream) to the next state. Must be a pure
/// function of its arguments; all randomness comes from the stream.
using Simulator = std::function<Vector(const Vector& x, const Vector& u, CounterRng& noise)>;

/// Monte-Carlo estimate of the transition kernel over the grid: each (state,
/// action) row is the empirical distribution of samples_per_pair simulated
/// transitions, binned by containing cell. Samples leaving the grid land in
/// the absorbing out-of-domain cell, whose row is a self-loop under every
/// action. The noise stream for sample i of pair (x, a) is keyed by
/// (seed, x, a, i), so the result is independent of worker scheduling.
TransitionModel estimate_kernel(const Simulator& dynamics, const StateGrid& grid,
                                const ActionSet& actions, int samples_per_pair,
                                std::uint64_t seed, int workers = 1);

}  // namespace stochreach
