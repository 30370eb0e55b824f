#include "stochreach/lp_formulation.hpp"

#include <cmath>

namespace stochreach {

void CMeasure::validate_on(const RegionMask& region) const {
    if (weight.size() != region.size())
        throw std::invalid_argument("CMeasure: weight size mismatch");
    for (int x : region.members())
        if (!(weight[x] > 0.0))
            throw std::invalid_argument("CMeasure: weight must be positive on member cells");
}

CMeasure uniform_measure(int n_states, double value) {
    if (value <= 0.0) throw std::invalid_argument("uniform_measure: value must be positive");
    return CMeasure{Vector::Constant(n_states, value)};
}

namespace {

std::string var_name(int stage, int cell) {
    return "V[k=" + std::to_string(stage) + ",x=" + std::to_string(cell) + "]";
}

VariableMap make_variable_map(int horizon, int n_states, const std::vector<int>& cells) {
    VariableMap map;
    map.horizon = horizon;
    map.n_states = n_states;
    map.var_of = IntMatrix::Constant(horizon + 1, n_states, -1);
    for (int k = 0; k <= horizon; ++k)
        for (int cell : cells) {
            map.var_of(k, cell) = static_cast<int>(map.var_to_stage_cell.size());
            map.var_to_stage_cell.emplace_back(k, cell);
        }
    return map;
}

/// Shared body of the two concatenated invariance programs.
BuiltLp build_invariance_lp(const TransitionModel& model, const RegionMask& safe,
                            Horizon horizon, const CMeasure& c, bool maximize_value,
                            double value_upper_bound) {
    if (horizon < 1) throw std::invalid_argument("invariance LP: horizon must be >= 1");
    if (safe.size() != model.n_states())
        throw std::invalid_argument("invariance LP: mask size mismatch");
    c.validate_on(safe);

    const auto cells = safe.members();
    BuiltLp built;
    built.kind = maximize_value ? ValueKind::MaxInvariance : ValueKind::MinInvariance;
    built.vars = make_variable_map(horizon, model.n_states(), cells);
    LinearProgram& lp = built.lp;
    lp.objective_sense = maximize_value ? Sense::Minimize : Sense::Maximize;

    for (const auto& [k, x] : built.vars.var_to_stage_cell)
        lp.add_variable(0.0, value_upper_bound, k < horizon ? c.weight[x] : 0.0, var_name(k, x));

    const RowSense sense = maximize_value ? RowSense::Ge : RowSense::Le;
    for (int k = 0; k < horizon; ++k)
        for (int x : cells)
            for (int a = 0; a < model.n_actions(); ++a) {
                std::vector<std::pair<int, double>> coeffs;
                coeffs.emplace_back(built.vars.var(k, x), 1.0);
                for (SparseMatrix::InnerIterator it(model.matrix(a), x); it; ++it)
                    if (safe.contains(static_cast<int>(it.col())))
                        coeffs.emplace_back(built.vars.var(k + 1, static_cast<int>(it.col())),
                                            -it.value());
                lp.add_row(sense, 0.0, std::move(coeffs));
            }
    for (int x : cells)
        lp.add_row(RowSense::Eq, 1.0, {{built.vars.var(horizon, x), 1.0}});
    return built;
}

Vector masked(const Vector& v, const RegionMask& region) {
    Vector out = Vector::Zero(v.size());
    for (int x : region.members()) out[x] = v[x];
    return out;
}

}  // namespace

BuiltLp build_max_invariance_lp(const TransitionModel& model, const RegionMask& safe,
                                Horizon horizon, const CMeasure& c, double value_upper_bound) {
    return build_invariance_lp(model, safe, horizon, c, true, value_upper_bound);
}

BuiltLp build_min_invariance_lp(const TransitionModel& model, const RegionMask& safe,
                                Horizon horizon, const CMeasure& c, double value_upper_bound) {
    return build_invariance_lp(model, safe, horizon, c, false, value_upper_bound);
}

BuiltLp build_reach_avoid_lp(const TransitionModel& model, const RegionMask& safe,
                             const RegionMask& target, Horizon horizon, const CMeasure& c,
                             double value_upper_bound) {
    if (horizon < 1) throw std::invalid_argument("reach-avoid LP: horizon must be >= 1");
    if (safe.size() != model.n_states() || target.size() != model.n_states())
        throw std::invalid_argument("reach-avoid LP: mask size mismatch");
    if (!target.is_subset_of(safe))
        throw std::invalid_argument("reach-avoid LP: target must be a subset of the safe set");
    c.validate_on(safe);

    std::vector<int> transient;
    for (int x = 0; x < model.n_states(); ++x)
        if (safe.contains(x) && !target.contains(x)) transient.push_back(x);

    BuiltLp built;
    built.kind = ValueKind::ReachAvoid;
    built.vars = make_variable_map(horizon, model.n_states(), transient);
    LinearProgram& lp = built.lp;
    lp.objective_sense = Sense::Minimize;

    for (const auto& [k, x] : built.vars.var_to_stage_cell)
        lp.add_variable(0.0, value_upper_bound, k < horizon ? c.weight[x] : 0.0, var_name(k, x));

    for (int k = 0; k < horizon; ++k)
        for (int x : transient)
            for (int a = 0; a < model.n_actions(); ++a) {
                std::vector<std::pair<int, double>> coeffs;
                coeffs.emplace_back(built.vars.var(k, x), 1.0);
                double target_mass = 0.0;
                for (SparseMatrix::InnerIterator it(model.matrix(a), x); it; ++it) {
                    const int to = static_cast<int>(it.col());
                    if (target.contains(to)) target_mass += it.value();
                    else if (safe.contains(to))
                        coeffs.emplace_back(built.vars.var(k + 1, to), -it.value());
                }
                lp.add_row(RowSense::Ge, target_mass, std::move(coeffs));
            }
    for (int x : transient)
        lp.add_row(RowSense::Eq, 0.0, {{built.vars.var(horizon, x), 1.0}});
    return built;
}

StageQLp build_q_stage_lp(const TransitionModel& model, const RegionMask& safe,
                          const Vector& v_next, Sense value_sense, const Matrix& c_xu) {
    if (safe.size() != model.n_states())
        throw std::invalid_argument("Q-stage LP: mask size mismatch");
    if (v_next.size() != model.n_states())
        throw std::invalid_argument("Q-stage LP: v_next size mismatch");
    if (c_xu.rows() != model.n_states() || c_xu.cols() != model.n_actions())
        throw std::invalid_argument("Q-stage LP: weight shape mismatch");

    StageQLp built;
    built.value_sense = value_sense;
    built.var_of = IntMatrix::Constant(model.n_states(), model.n_actions(), -1);
    LinearProgram& lp = built.lp;
    lp.objective_sense = value_sense == Sense::Maximize ? Sense::Minimize : Sense::Maximize;

    const Vector v_safe = masked(v_next, safe);
    std::vector<Vector> integral(static_cast<size_t>(model.n_actions()));
    for (int a = 0; a < model.n_actions(); ++a)
        integral[static_cast<size_t>(a)] = model.apply(a, v_safe);

    const RowSense sense = value_sense == Sense::Maximize ? RowSense::Ge : RowSense::Le;
    for (int x : safe.members())
        for (int a = 0; a < model.n_actions(); ++a) {
            if (!(c_xu(x, a) > 0.0))
                throw std::invalid_argument("Q-stage LP: weights must be positive on safe cells");
            const int var = lp.add_variable(0.0, 1.0, c_xu(x, a),
                                            "Q[x=" + std::to_string(x) +
                                                ",u=" + std::to_string(a) + "]");
            built.var_of(x, a) = var;
            built.var_to_cell_action.emplace_back(x, a);
            lp.add_row(sense, integral[static_cast<size_t>(a)][x], {{var, 1.0}});
        }
    return built;
}

StageVLp build_reach_avoid_stage_lp(const TransitionModel& model, const RegionMask& safe,
                                    const RegionMask& target, const Vector& v_next,
                                    const CMeasure& c) {
    if (safe.size() != model.n_states() || target.size() != model.n_states())
        throw std::invalid_argument("reach-avoid stage LP: mask size mismatch");
    if (!target.is_subset_of(safe))
        throw std::invalid_argument("reach-avoid stage LP: target must be a subset of safe");
    if (v_next.size() != model.n_states())
        throw std::invalid_argument("reach-avoid stage LP: v_next size mismatch");
    c.validate_on(safe);

    StageVLp built;
    built.var_of = IntVector::Constant(model.n_states(), -1);
    LinearProgram& lp = built.lp;
    lp.objective_sense = Sense::Minimize;

    // v_next is pinned (1 on target, 0 off safe), so one kernel application
    // yields both integral terms of the constraint.
    std::vector<Vector> rhs(static_cast<size_t>(model.n_actions()));
    for (int a = 0; a < model.n_actions(); ++a)
        rhs[static_cast<size_t>(a)] = model.apply(a, v_next);

    for (int x = 0; x < model.n_states(); ++x) {
        if (!safe.contains(x) || target.contains(x)) continue;
        const int var = lp.add_variable(0.0, 1.0, c.weight[x], var_name(0, x));
        built.var_of[x] = var;
        built.var_to_cell.push_back(x);
        for (int a = 0; a < model.n_actions(); ++a)
            lp.add_row(RowSense::Ge, rhs[static_cast<size_t>(a)][x], {{var, 1.0}});
    }
    return built;
}

ValueTable assemble_value_table(const SolveReport& report, const BuiltLp& built,
                                const RegionMask& safe, const RegionMask* target) {
    if (report.status != SolveStatus::Optimal)
        throw std::runtime_error(std::string("assemble_value_table: LP solve failed: ") +
                                 to_string(report.status));

    ValueTable table;
    table.kind = built.kind;
    table.values = Matrix::Zero(built.vars.horizon + 1, built.vars.n_states);
    if (built.kind == ValueKind::ReachAvoid) {
        if (target == nullptr)
            throw std::invalid_argument("assemble_value_table: reach-avoid needs a target");
        for (int k = 0; k <= built.vars.horizon; ++k)
            for (int x : target->members()) table.values(k, x) = 1.0;
    }
    for (size_t v = 0; v < built.vars.var_to_stage_cell.size(); ++v) {
        const auto& [k, x] = built.vars.var_to_stage_cell[v];
        table.values(k, x) = clamp01(report.solution[static_cast<int>(v)]);
    }
    validate_value_table(table, &safe, target, 1e-7);
    return table;
}

StageQSolution extract_stage_values(const StageQLp& built, const SolveReport& report,
                                    const RegionMask& safe) {
    if (report.status != SolveStatus::Optimal)
        throw std::runtime_error(std::string("extract_stage_values: LP solve failed: ") +
                                 to_string(report.status));
    const int n = built.var_of.rows();
    const int na = built.var_of.cols();
    StageQSolution out;
    out.values = Vector::Zero(n);
    out.actions = IntVector::Zero(n);
    out.q = Matrix::Zero(n, na);
    const bool maximize = built.value_sense == Sense::Maximize;
    for (int x : safe.members()) {
        int best_a = 0;
        double best = 0.0;
        for (int a = 0; a < na; ++a) {
            const double q = clamp01(report.solution[built.var_of(x, a)]);
            out.q(x, a) = q;
            if (a == 0 || (maximize ? q > best : q < best)) {
                best = q;
                best_a = a;
            }
        }
        out.values[x] = best;
        out.actions[x] = best_a;
    }
    return out;
}

ValueTable solve_invariance_lp(const TransitionModel& model, const RegionMask& safe,
                               Horizon horizon, const CMeasure& c, Sense sense,
                               const SimplexOptions& opts) {
    const bool maximize = sense == Sense::Maximize;
    if (safe.empty() || horizon == 0) {
        ValueTable table;
        table.kind = maximize ? ValueKind::MaxInvariance : ValueKind::MinInvariance;
        table.values = Matrix::Zero(horizon + 1, model.n_states());
        table.values.row(horizon) = safe.indicator().transpose();
        return table;
    }
    const BuiltLp built = maximize ? build_max_invariance_lp(model, safe, horizon, c)
                                   : build_min_invariance_lp(model, safe, horizon, c);
    return assemble_value_table(solve(built.lp, opts), built, safe);
}

ValueTable solve_reach_avoid_lp(const TransitionModel& model, const RegionMask& safe,
                                const RegionMask& target, Horizon horizon, const CMeasure& c,
                                const SimplexOptions& opts) {
    const int transient = safe.count() - target.count();
    if (transient == 0 || horizon == 0) {
        ValueTable table;
        table.kind = ValueKind::ReachAvoid;
        table.values = Matrix::Zero(horizon + 1, model.n_states());
        for (int k = 0; k <= horizon; ++k)
            for (int x : target.members()) table.values(k, x) = 1.0;
        return table;
    }
    const BuiltLp built = build_reach_avoid_lp(model, safe, target, horizon, c);
    return assemble_value_table(solve(built.lp, opts), built, safe, &target);
}

InvarianceSolution solve_invariance_stagewise_lp(const TransitionModel& model,
                                                 const RegionMask& safe, Horizon horizon,
                                                 Sense sense, const SimplexOptions& opts) {
    const int n = model.n_states();
    const int na = model.n_actions();
    const Matrix c_xu = Matrix::Ones(n, na);

    InvarianceSolution out;
    out.values.kind = sense == Sense::Maximize ? ValueKind::MaxInvariance
                                               : ValueKind::MinInvariance;
    out.values.values = Matrix::Zero(horizon + 1, n);
    out.values.values.row(horizon) = safe.indicator().transpose();
    out.policy.actions = IntMatrix::Zero(horizon, n);
    out.q.stage_q.assign(static_cast<size_t>(horizon), Matrix::Zero(n, na));

    for (int k = horizon - 1; k >= 0; --k) {
        const Vector v_next = out.values.values.row(k + 1).transpose();
        const StageQLp built = build_q_stage_lp(model, safe, v_next, sense, c_xu);
        const StageQSolution stage = extract_stage_values(built, solve(built.lp, opts), safe);
        out.values.values.row(k) = stage.values.transpose();
        out.policy.actions.row(k) = stage.actions.transpose();
        out.q.stage_q[static_cast<size_t>(k)] = stage.q;
    }
    return out;
}

ValueTable solve_reach_avoid_stagewise_lp(const TransitionModel& model, const RegionMask& safe,
                                          const RegionMask& target, Horizon horizon,
                                          const CMeasure& c, const SimplexOptions& opts) {
    if (!target.is_subset_of(safe))
        throw std::invalid_argument("reach-avoid: target must be a subset of the safe set");
    ValueTable table;
    table.kind = ValueKind::ReachAvoid;
    table.values = Matrix::Zero(horizon + 1, model.n_states());
    for (int k = 0; k <= horizon; ++k)
        for (int x : target.members()) table.values(k, x) = 1.0;

    for (int k = horizon - 1; k >= 0; --k) {
        const Vector v_next = table.values.row(k + 1).transpose();
        const StageVLp built = build_reach_avoid_stage_lp(model, safe, target, v_next, c);
        if (built.var_to_cell.empty()) continue;
        const SolveReport report = solve(built.lp, opts);
        if (report.status != SolveStatus::Optimal)
            throw std::runtime_error(std::string("reach-avoid stage LP failed: ") +
                                     to_string(report.status));
        for (size_t v = 0; v < built.var_to_cell.size(); ++v)
            table.values(k, built.var_to_cell[v]) = clamp01(report.solution[static_cast<int>(v)]);
    }
    validate_value_table(table, &safe, &target, 1e-7);
    return table;
}

}  // namespace stochreach
