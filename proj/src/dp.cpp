#include "stochreach/dp.hpp"

#include <cmath>

namespace stochreach {

const char* to_string(ValueKind kind) {
    switch (kind) {
        case ValueKind::MaxInvariance: return "max-invariance";
        case ValueKind::MinInvariance: return "min-invariance";
        case ValueKind::MaxReach: return "max-reach";
        case ValueKind::MinReach: return "min-reach";
        case ValueKind::ReachAvoid: return "reach-avoid";
        case ValueKind::PolicyEval: return "policy-eval";
    }
    return "unknown";
}

ValueKind value_kind_from_string(const std::string& s) {
    if (s == "max-invariance") return ValueKind::MaxInvariance;
    if (s == "min-invariance") return ValueKind::MinInvariance;
    if (s == "max-reach") return ValueKind::MaxReach;
    if (s == "min-reach") return ValueKind::MinReach;
    if (s == "reach-avoid") return ValueKind::ReachAvoid;
    if (s == "policy-eval") return ValueKind::PolicyEval;
    throw std::invalid_argument("unknown value kind: " + s);
}

namespace {

void check_mask(const TransitionModel& model, const RegionMask& mask, const char* what) {
    if (mask.size() != model.n_states())
        throw std::invalid_argument(std::string(what) + ": mask size mismatch");
}

void check_horizon(Horizon horizon) {
    if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
}

/// Backward recursion shared by both invariance problems.
InvarianceSolution solve_invariance(const TransitionModel& model, const RegionMask& safe,
                                    Horizon horizon, bool maximize) {
    check_mask(model, safe, "invariance");
    check_horizon(horizon);
    const int n = model.n_states();
    const int na = model.n_actions();
    const auto safe_states = safe.members();

    InvarianceSolution out;
    out.values.kind = maximize ? ValueKind::MaxInvariance : ValueKind::MinInvariance;
    out.values.values = Matrix::Zero(horizon + 1, n);
    out.values.values.row(horizon) = safe.indicator().transpose();
    out.policy.actions = IntMatrix::Zero(horizon, n);
    out.q.stage_q.assign(static_cast<size_t>(horizon), Matrix::Zero(n, na));

    for (int k = horizon - 1; k >= 0; --k) {
        const Vector v_next = out.values.values.row(k + 1).transpose();
        Matrix& q = out.q.stage_q[static_cast<size_t>(k)];
        for (int a = 0; a < na; ++a) q.col(a) = model.apply(a, v_next);
        for (int x : safe_states) {
            int best_a = 0;
            double best = q(x, 0);
            for (int a = 1; a < na; ++a) {
                const double cand = q(x, a);
                if (maximize ? cand > best : cand < best) {
                    best = cand;
                    best_a = a;
                }
            }
            out.values.values(k, x) = best;
            out.policy.actions(k, x) = best_a;
        }
    }
    return out;
}

}  // namespace

ValueTable evaluate_policy(const TransitionModel& model, const RegionMask& safe,
                           const PolicyTable& policy, Horizon horizon) {
    check_mask(model, safe, "evaluate_policy");
    check_horizon(horizon);
    if (policy.horizon() != horizon || (horizon > 0 && policy.n_states() != model.n_states()))
        throw std::invalid_argument("evaluate_policy: policy shape mismatch");

    ValueTable table;
    table.kind = ValueKind::PolicyEval;
    table.values = Matrix::Zero(horizon + 1, model.n_states());
    table.values.row(horizon) = safe.indicator().transpose();
    for (int k = horizon - 1; k >= 0; --k) {
        const Vector v_next = table.values.row(k + 1).transpose();
        for (int x : safe.members()) {
            const int a = policy.action(k, x);
            if (a < 0 || a >= model.n_actions())
                throw std::invalid_argument("evaluate_policy: action index out of range");
            table.values(k, x) = model.matrix(a).row(x).dot(v_next);
        }
    }
    return table;
}

InvarianceSolution max_invariance(const TransitionModel& model, const RegionMask& safe,
                                  Horizon horizon) {
    return solve_invariance(model, safe, horizon, true);
}

InvarianceSolution min_invariance(const TransitionModel& model, const RegionMask& safe,
                                  Horizon horizon) {
    return solve_invariance(model, safe, horizon, false);
}

ValueTable max_reachability(const TransitionModel& model, const RegionMask& target,
                            Horizon horizon) {
    ValueTable table = min_invariance(model, complement(target), horizon).values;
    table.kind = ValueKind::MaxReach;
    table.values = (1.0 - table.values.array()).matrix();
    return table;
}

ValueTable min_reachability(const TransitionModel& model, const RegionMask& target,
                            Horizon horizon) {
    ValueTable table = max_invariance(model, complement(target), horizon).values;
    table.kind = ValueKind::MinReach;
    table.values = (1.0 - table.values.array()).matrix();
    return table;
}

ReachAvoidSolution reach_avoid(const TransitionModel& model, const RegionMask& safe,
                               const RegionMask& target, Horizon horizon) {
    check_mask(model, safe, "reach_avoid");
    check_mask(model, target, "reach_avoid");
    check_horizon(horizon);
    if (!target.is_subset_of(safe))
        throw std::invalid_argument("reach_avoid: target must be a subset of the safe set");
    const int n = model.n_states();
    const int na = model.n_actions();

    // Transient states A \ T; values elsewhere are pinned.
    std::vector<int> transient;
    for (int x = 0; x < n; ++x)
        if (safe.contains(x) && !target.contains(x)) transient.push_back(x);

    ReachAvoidSolution out;
    out.values.kind = ValueKind::ReachAvoid;
    out.values.values = Matrix::Zero(horizon + 1, n);
    out.values.values.row(horizon) = target.indicator().transpose();
    out.policy.actions = IntMatrix::Zero(horizon, n);

    for (int k = horizon - 1; k >= 0; --k) {
        // The stored next-stage row is already 1 on T, 0 off A, so a single
        // kernel application covers both integral terms of the recursion.
        const Vector v_next = out.values.values.row(k + 1).transpose();
        Matrix q(n, na);
        for (int a = 0; a < na; ++a) q.col(a) = model.apply(a, v_next);
        out.values.values.row(k) = target.indicator().transpose();
        for (int x : transient) {
            int best_a = 0;
            double best = q(x, 0);
            for (int a = 1; a < na; ++a) {
                if (q(x, a) > best) {
                    best = q(x, a);
                    best_a = a;
                }
            }
            out.values.values(k, x) = best;
            out.policy.actions(k, x) = best_a;
        }
    }
    return out;
}

RegionMask level_set(const ValueTable& table, int stage, double p) {
    if (stage < 0 || stage > table.horizon())
        throw std::out_of_range("level_set: stage out of range");
    RegionMask mask;
    mask.name = "level_set";
    mask.member.resize(static_cast<size_t>(table.n_states()));
    for (int x = 0; x < table.n_states(); ++x)
        mask.member[static_cast<size_t>(x)] = table.values(stage, x) >= p ? 1 : 0;
    return mask;
}

void validate_value_table(const ValueTable& table, const RegionMask* safe,
                          const RegionMask* target, double tol) {
    const int N = table.horizon();
    const int n = table.n_states();
    for (int k = 0; k <= N; ++k)
        for (int x = 0; x < n; ++x) {
            const double v = table.values(k, x);
            if (!(v >= -tol && v <= 1.0 + tol))
                throw std::runtime_error("ValueTable: entry outside [0,1]");
        }

    const bool invariance_like = table.kind == ValueKind::MaxInvariance ||
                                 table.kind == ValueKind::MinInvariance ||
                                 table.kind == ValueKind::PolicyEval;
    if (invariance_like && safe) {
        for (int k = 0; k <= N; ++k)
            for (int x = 0; x < n; ++x)
                if (!safe->contains(x) && std::abs(table.values(k, x)) > tol)
                    throw std::runtime_error("ValueTable: nonzero value outside the safe set");
        for (int x = 0; x < n; ++x) {
            const double want = safe->contains(x) ? 1.0 : 0.0;
            if (std::abs(table.values(N, x) - want) > tol)
                throw std::runtime_error("ValueTable: terminal stage must equal the indicator");
        }
    }
    if (table.kind == ValueKind::ReachAvoid && safe && target) {
        for (int k = 0; k <= N; ++k)
            for (int x = 0; x < n; ++x) {
                const double v = table.values(k, x);
                if (target->contains(x) && std::abs(v - 1.0) > tol)
                    throw std::runtime_error("ValueTable: reach-avoid value must be 1 on target");
                if (!safe->contains(x) && std::abs(v) > tol)
                    throw std::runtime_error("ValueTable: reach-avoid value must be 0 off safe");
                if (k == N && safe->contains(x) && !target->contains(x) && std::abs(v) > tol)
                    throw std::runtime_error("ValueTable: terminal reach-avoid value must be 0");
            }
    }
}

}  // namespace stochreach
