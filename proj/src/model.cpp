#include "stochreach/model.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace stochreach {

void ActionSet::validate() const {
    if (actions.rows() < 1) throw std::invalid_argument("ActionSet: need at least one action");
    for (int i = 0; i < actions.rows(); ++i)
        for (int j = i + 1; j < actions.rows(); ++j)
            if (actions.row(i) == actions.row(j))
                throw std::invalid_argument("ActionSet: actions must be distinct");
}

ActionSet heading_actions(int n) {
    if (n < 1) throw std::invalid_argument("heading_actions: need at least one heading");
    ActionSet u;
    u.actions.resize(n, 1);
    const double two_pi = 6.283185307179586476925286766559;
    for (int i = 1; i <= n; ++i) u.actions(i - 1, 0) = two_pi * i / n;
    return u;
}

TransitionModel::TransitionModel(int n_states, std::vector<SparseMatrix> kernel)
    : n_states_(n_states), kernel_(std::move(kernel)) {
    if (n_states_ < 1) throw std::invalid_argument("TransitionModel: need at least one state");
    if (kernel_.empty()) throw std::invalid_argument("TransitionModel: need at least one action");
    for (const auto& m : kernel_)
        if (m.rows() != n_states_ || m.cols() != n_states_)
            throw std::invalid_argument("TransitionModel: kernel matrix shape mismatch");
}

double TransitionModel::prob(int action, int from, int to) const {
    return kernel_[static_cast<size_t>(action)].coeff(from, to);
}

Vector TransitionModel::apply(int action, const Vector& v) const {
    if (v.size() != n_states_)
        throw std::invalid_argument("TransitionModel::apply: vector size mismatch");
    return kernel_[static_cast<size_t>(action)] * v;
}

void TransitionModel::validate(double tol) const {
    for (int a = 0; a < n_actions(); ++a) {
        const SparseMatrix& m = kernel_[static_cast<size_t>(a)];
        for (int x = 0; x < n_states_; ++x) {
            double sum = 0.0;
            for (SparseMatrix::InnerIterator it(m, x); it; ++it) {
                if (it.value() < 0.0 || it.value() > 1.0)
                    throw std::runtime_error("TransitionModel: entry outside [0,1]");
                sum += it.value();
            }
            if (std::abs(sum - 1.0) > tol)
                throw std::runtime_error("TransitionModel: row sum differs from 1");
        }
    }
}

TransitionModel estimate_kernel(const Simulator& dynamics, const StateGrid& grid,
                                const ActionSet& actions, int samples_per_pair,
                                std::uint64_t seed, int workers) {
    if (samples_per_pair < 1)
        throw std::invalid_argument("estimate_kernel: samples_per_pair must be >= 1");
    actions.validate();

    const int n_states = grid.num_states();
    const int n_cells = grid.num_cells();
    const int n_actions = actions.count();

    // One row per (action, cell) pair, filled independently.
    std::vector<std::vector<std::pair<int, double>>> rows(
        static_cast<size_t>(n_actions) * static_cast<size_t>(n_cells));
    std::string failure;
    std::mutex failure_mutex;

    parallel_for(static_cast<std::int64_t>(rows.size()), workers, [&](std::int64_t p) {
        const int a = static_cast<int>(p / n_cells);
        const int x = static_cast<int>(p % n_cells);
        const Vector center = grid.center(x);
        const Vector u = actions.action(a);
        std::map<int, int> counts;
        for (int i = 0; i < samples_per_pair; ++i) {
            CounterRng noise(seed, static_cast<std::uint64_t>(x),
                             static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(i));
            const Vector next = dynamics(center, u, noise);
            if (next.size() != grid.axes() || !next.allFinite()) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (failure.empty())
                    failure = "estimate_kernel: non-finite or mis-sized next state at cell " +
                              std::to_string(x) + ", action " + std::to_string(a);
                return;
            }
            counts[grid.locate(next)] += 1;
        }
        auto& row = rows[static_cast<size_t>(p)];
        row.reserve(counts.size());
        double sum = 0.0;
        int largest = -1, largest_count = -1;
        for (const auto& [to, c] : counts) {
            if (c > largest_count) {
                largest_count = c;
                largest = static_cast<int>(row.size());
            }
            row.emplace_back(to, static_cast<double>(c) / samples_per_pair);
            sum += row.back().second;
        }
        // Pin the exact row sum to 1 by absorbing the rounding slack into the
        // most likely entry.
        row[static_cast<size_t>(largest)].second += 1.0 - sum;
    });
    if (!failure.empty()) throw std::runtime_error(failure);

    std::vector<SparseMatrix> kernel;
    kernel.reserve(static_cast<size_t>(n_actions));
    for (int a = 0; a < n_actions; ++a) {
        std::vector<Eigen::Triplet<double>> trips;
        for (int x = 0; x < n_cells; ++x)
            for (const auto& [to, p] : rows[static_cast<size_t>(a) * n_cells + x])
                trips.emplace_back(x, to, p);
        trips.emplace_back(grid.out_cell(), grid.out_cell(), 1.0);  // absorbing
        SparseMatrix m(n_states, n_states);
        m.setFromTriplets(trips.begin(), trips.end());
        m.makeCompressed();
        kernel.push_back(std::move(m));
    }
    return TransitionModel(n_states, std::move(kernel));
}

}  // namespace stochreach
