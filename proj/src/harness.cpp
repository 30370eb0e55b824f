#include "stochreach/harness.hpp"

#include "stochreach/rng.hpp"

#include <cmath>

namespace stochreach {

namespace {

constexpr long long kEnumerationCap = 50'000'000;

enum class Objective { Invariance, Reachability, ReachAvoid };

/// Evaluates one deterministic Markov policy by plain backward recursion,
/// for all start states at once. `assign(k, x)` gives the action at the
/// states where the action matters; elsewhere the value is forced.
std::vector<double> rollout_values(const TransitionModel& model, const RegionMask& safe,
                                   const RegionMask& target, Horizon horizon, Objective obj,
                                   const std::function<int(int, int)>& assign) {
    const int n = model.n_states();
    std::vector<double> v(static_cast<size_t>(n), 0.0);
    std::vector<double> next(static_cast<size_t>(n), 0.0);
    for (int x = 0; x < n; ++x) {
        switch (obj) {
            case Objective::Invariance: v[static_cast<size_t>(x)] = safe.contains(x) ? 1.0 : 0.0; break;
            case Objective::Reachability: v[static_cast<size_t>(x)] = target.contains(x) ? 1.0 : 0.0; break;
            case Objective::ReachAvoid: v[static_cast<size_t>(x)] = target.contains(x) ? 1.0 : 0.0; break;
        }
    }
    for (int k = horizon - 1; k >= 0; --k) {
        next.swap(v);
        for (int x = 0; x < n; ++x) {
            bool forced = false;
            double forced_value = 0.0;
            switch (obj) {
                case Objective::Invariance:
                    if (!safe.contains(x)) { forced = true; forced_value = 0.0; }
                    break;
                case Objective::Reachability:
                    if (target.contains(x)) { forced = true; forced_value = 1.0; }
                    break;
                case Objective::ReachAvoid:
                    if (target.contains(x)) { forced = true; forced_value = 1.0; }
                    else if (!safe.contains(x)) { forced = true; forced_value = 0.0; }
                    break;
            }
            if (forced) {
                v[static_cast<size_t>(x)] = forced_value;
                continue;
            }
            const int a = assign(k, x);
            double e = 0.0;
            for (SparseMatrix::InnerIterator it(model.matrix(a), x); it; ++it)
                e += it.value() * next[static_cast<size_t>(it.col())];
            v[static_cast<size_t>(x)] = e;
        }
    }
    return v;
}

struct Extrema {
    Vector max_v, min_v;
    long long policies = 0;
};

/// Enumerates every assignment of actions to (stage, relevant state) pairs
/// and tracks the per-start-state extrema of the rollout values.
Extrema enumerate_objective(const TransitionModel& model, const RegionMask& safe,
                            const RegionMask& target, Horizon horizon, Objective obj,
                            const std::vector<int>& relevant) {
    const int n = model.n_states();
    const int na = model.n_actions();
    const long long slots = static_cast<long long>(relevant.size()) * horizon;

    long long count = 1;
    for (long long s = 0; s < slots; ++s) {
        count *= na;
        if (count > kEnumerationCap)
            throw std::invalid_argument("enumerate_policies: instance too large to enumerate");
    }

    std::vector<int> odometer(static_cast<size_t>(slots), 0);
    std::vector<int> state_slot(static_cast<size_t>(n), -1);
    for (size_t i = 0; i < relevant.size(); ++i)
        state_slot[static_cast<size_t>(relevant[i])] = static_cast<int>(i);
    const auto assign = [&](int k, int x) {
        return odometer[static_cast<size_t>(k) * relevant.size() +
                        static_cast<size_t>(state_slot[static_cast<size_t>(x)])];
    };

    Extrema ex;
    ex.max_v = Vector::Constant(n, -1.0);
    ex.min_v = Vector::Constant(n, 2.0);
    ex.policies = count;
    for (long long p = 0; p < count; ++p) {
        const auto v = rollout_values(model, safe, target, horizon, obj, assign);
        for (int x = 0; x < n; ++x) {
            ex.max_v[x] = std::max(ex.max_v[x], v[static_cast<size_t>(x)]);
            ex.min_v[x] = std::min(ex.min_v[x], v[static_cast<size_t>(x)]);
        }
        for (long long s = 0; s < slots; ++s) {
            if (++odometer[static_cast<size_t>(s)] < na) break;
            odometer[static_cast<size_t>(s)] = 0;
        }
    }
    return ex;
}

}  // namespace

OracleResult enumerate_policies(const TransitionModel& model, const RegionMask& safe,
                                const RegionMask& target, Horizon horizon) {
    if (model.n_states() > 6 || model.n_actions() > 3 || horizon > 4)
        throw std::invalid_argument("enumerate_policies: instance exceeds oracle guard");
    if (horizon < 0) throw std::invalid_argument("enumerate_policies: negative horizon");
    if (safe.size() != model.n_states() || target.size() != model.n_states())
        throw std::invalid_argument("enumerate_policies: mask size mismatch");

    OracleResult out;
    {
        // Off-A values are forced to zero, so only safe-state actions matter.
        const auto ex = enumerate_objective(model, safe, target, horizon,
                                            Objective::Invariance, safe.members());
        out.max_invariance = ex.max_v;
        out.min_invariance = ex.min_v;
        out.policies_invariance = ex.policies;
    }
    {
        // Once inside the target the event has happened; actions there are moot.
        const auto ex = enumerate_objective(model, safe, target, horizon,
                                            Objective::Reachability,
                                            complement(target).members());
        out.max_reachability = ex.max_v;
        out.min_reachability = ex.min_v;
        out.policies_reachability = ex.policies;
    }
    {
        std::vector<int> transient;
        for (int x = 0; x < model.n_states(); ++x)
            if (safe.contains(x) && !target.contains(x)) transient.push_back(x);
        const auto ex = enumerate_objective(model, safe, target, horizon,
                                            Objective::ReachAvoid, transient);
        out.max_reach_avoid = ex.max_v;
        out.min_reach_avoid = ex.min_v;
        out.policies_reach_avoid = ex.policies;
    }
    return out;
}

RandomInstance random_instance(std::uint64_t seed, int n_states, int n_actions) {
    if (n_states < 1 || n_actions < 1)
        throw std::invalid_argument("random_instance: need at least one state and action");
    RandomInstance inst;

    std::vector<SparseMatrix> kernel;
    for (int a = 0; a < n_actions; ++a) {
        std::vector<Eigen::Triplet<double>> trips;
        for (int x = 0; x < n_states; ++x) {
            CounterRng rng(seed, 0x726f77ull, static_cast<std::uint64_t>(a),
                           static_cast<std::uint64_t>(x));
            Vector row(n_states);
            for (int y = 0; y < n_states; ++y) row[y] = -std::log(rng.uniform_pos());
            row /= row.sum();
            for (int y = 0; y < n_states; ++y) trips.emplace_back(x, y, row[y]);
        }
        SparseMatrix m(n_states, n_states);
        m.setFromTriplets(trips.begin(), trips.end());
        kernel.push_back(std::move(m));
    }
    inst.model = TransitionModel(n_states, std::move(kernel));

    CounterRng mask_rng(seed, 0x6d61736bull);
    inst.safe.name = "safe";
    inst.safe.member.assign(static_cast<size_t>(n_states), 0);
    for (int x = 0; x < n_states; ++x)
        inst.safe.member[static_cast<size_t>(x)] = mask_rng.uniform() < 0.5 ? 1 : 0;
    if (inst.safe.empty())
        inst.safe.member[static_cast<size_t>(mask_rng.next_u64() % n_states)] = 1;

    const auto safe_states = inst.safe.members();
    inst.target.name = "target";
    inst.target.member.assign(static_cast<size_t>(n_states), 0);
    for (int x : safe_states)
        inst.target.member[static_cast<size_t>(x)] = mask_rng.uniform() < 0.5 ? 1 : 0;
    if (inst.target.empty()) {
        const int pick = safe_states[static_cast<size_t>(mask_rng.next_u64() % safe_states.size())];
        inst.target.member[static_cast<size_t>(pick)] = 1;
    }
    return inst;
}

GridTableEvaluable::GridTableEvaluable(ValueTable table, StateGrid grid)
    : table_(std::move(table)), grid_(std::move(grid)) {
    if (table_.n_states() != grid_.num_states())
        throw std::invalid_argument("GridTableEvaluable: table does not match grid");
}

double GridTableEvaluable::value_at(int stage, const Vector& point) const {
    return table_.values(stage, grid_.locate(point));
}

void ErrorReport::validate() const {
    if (static_cast<int>(methods.size()) != distances.rows())
        throw std::runtime_error("ErrorReport: method count mismatch");
    if ((distances.array() < 0.0).any())
        throw std::runtime_error("ErrorReport: negative distance");
}

ErrorReport error_study(const Evaluable& reference,
                        const std::vector<std::pair<std::string, const Evaluable*>>& candidates,
                        const std::vector<Vector>& eval_points) {
    const int N = reference.horizon();
    for (const auto& [name, cand] : candidates)
        if (cand->horizon() != N)
            throw std::invalid_argument("error_study: mismatched stages for method " + name);

    ErrorReport report;
    report.distances = Matrix::Zero(static_cast<int>(candidates.size()), N + 1);
    for (size_t m = 0; m < candidates.size(); ++m) {
        report.methods.push_back(candidates[m].first);
        for (int offset = 0; offset <= N; ++offset) {
            const int stage = N - offset;
            double ss = 0.0;
            for (const auto& pt : eval_points) {
                const double d = candidates[m].second->value_at(stage, pt) -
                                 reference.value_at(stage, pt);
                ss += d * d;
            }
            report.distances(static_cast<int>(m), offset) = std::sqrt(ss);
        }
    }
    return report;
}

}  // namespace stochreach
