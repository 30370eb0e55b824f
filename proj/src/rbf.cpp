#include "stochreach/rbf.hpp"

#include <cmath>

namespace stochreach {

Vector RbfModel::features(const Vector& x) const {
    Vector phi(basis_count());
    const double e2 = epsilon * epsilon;
    for (int j = 0; j < basis_count(); ++j) {
        const double d2 = (x.transpose() - centers.row(j)).squaredNorm();
        phi[j] = std::exp(-e2 * d2);
    }
    return phi;
}

void RbfModel::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("RbfModel: epsilon must be positive");
    if (basis_count() < 1) throw std::invalid_argument("RbfModel: need at least one center");
    for (int i = 0; i < basis_count(); ++i)
        for (int j = i + 1; j < basis_count(); ++j)
            if (centers.row(i) == centers.row(j))
                throw std::invalid_argument("RbfModel: centers must be distinct");
}

RbfModel make_rbf_grid(const Vector& lower, const Vector& upper, int per_axis, double epsilon,
                       int horizon) {
    if (per_axis < 1) throw std::invalid_argument("make_rbf_grid: per_axis must be >= 1");
    const int dim = static_cast<int>(lower.size());
    int count = 1;
    for (int a = 0; a < dim; ++a) count *= per_axis;

    RbfModel model;
    model.epsilon = epsilon;
    model.horizon = horizon;
    model.centers.resize(count, dim);
    for (int c = 0; c < count; ++c) {
        int rest = c;
        for (int a = dim - 1; a >= 0; --a) {
            const int i = rest % per_axis;
            rest /= per_axis;
            model.centers(c, a) = lower[a] + (i + 0.5) * (upper[a] - lower[a]) / per_axis;
        }
    }
    model.weights = Matrix::Zero(horizon, count);
    model.has_weights.assign(static_cast<size_t>(horizon), 0);
    model.validate();
    return model;
}

double rbf_eval(const RbfModel& model, int stage, const Vector& x) {
    if (stage < 0 || stage >= model.horizon ||
        !model.has_weights[static_cast<size_t>(stage)])
        throw std::out_of_range("rbf_eval: stage has no weights");
    return model.weights.row(stage).dot(model.features(x));
}

double pinned_reach_avoid_value(const ReachAvoidFitProblem& problem, const Vector& x,
                                double raw_value) {
    if (problem.in_target(x)) return 1.0;
    if (!problem.in_safe(x)) return 0.0;
    return clamp01(raw_value);
}

StageFit fit_stage_reach_avoid(const ReachAvoidFitProblem& problem, const RbfModel& model,
                               const std::function<double(const Vector&)>& v_next_raw,
                               const ConstraintSample& sample, std::uint64_t stage_key,
                               const SimplexOptions& opts) {
    if (sample.n_states < 1 || sample.n_inputs < 1 || sample.n_noise < 1)
        throw std::invalid_argument("fit_stage_reach_avoid: sample counts must be >= 1");
    const int B = model.basis_count();

    StageFit fit;
    fit.states.reserve(static_cast<size_t>(sample.n_states));

    LinearProgram lp;
    lp.objective_sense = Sense::Minimize;
    Vector objective = Vector::Zero(B);

    std::vector<Vector> feature_rows;
    feature_rows.reserve(static_cast<size_t>(sample.n_states));
    for (int i = 0; i < sample.n_states; ++i) {
        CounterRng state_rng(sample.seed, stage_key * 4 + 0, static_cast<std::uint64_t>(i));
        const Vector x = problem.sample_state(i, state_rng);
        fit.states.push_back(x);
        const Vector phi = model.features(x);
        feature_rows.push_back(phi);
        objective += phi;  // uniform c-weight per sampled state
    }
    for (int j = 0; j < B; ++j) lp.add_variable(-kInf, kInf, objective[j]);

    for (int i = 0; i < sample.n_states; ++i) {
        const Vector& phi = feature_rows[static_cast<size_t>(i)];
        std::vector<std::pair<int, double>> coeffs;
        coeffs.reserve(static_cast<size_t>(B));
        for (int j = 0; j < B; ++j) coeffs.emplace_back(j, phi[j]);
        for (int l = 0; l < sample.n_inputs; ++l) {
            CounterRng input_rng(sample.seed, stage_key * 4 + 1, static_cast<std::uint64_t>(i),
                                 static_cast<std::uint64_t>(l));
            const Vector u = problem.sample_input(i, l, input_rng);
            // One noise stream per (state, input) pair; its draws are shared
            // by every basis function of this constraint.
            CounterRng noise_rng(sample.seed, stage_key * 4 + 2, static_cast<std::uint64_t>(i),
                                 static_cast<std::uint64_t>(l));
            double mean = 0.0;
            for (int d = 0; d < sample.n_noise; ++d) {
                const Vector next = problem.dynamics(fit.states[static_cast<size_t>(i)], u,
                                                     noise_rng);
                mean += pinned_reach_avoid_value(problem, next, v_next_raw(next));
            }
            mean /= sample.n_noise;
            lp.add_row(RowSense::Ge, mean, coeffs);
        }
    }

    const SolveReport report = solve(lp, opts);
    if (report.status != SolveStatus::Optimal)
        throw std::runtime_error(std::string("fit_stage_reach_avoid: LP solve failed: ") +
                                 to_string(report.status));
    fit.weights = report.solution;
    fit.objective = report.objective;
    fit.iterations = report.iterations;
    return fit;
}

RbfFitReport backward_fit(RbfModel& model, const ReachAvoidFitProblem& problem,
                          const ConstraintSample& sample, bool resample_per_stage,
                          const SimplexOptions& opts) {
    RbfFitReport report;
    const int N = model.horizon;
    for (int k = N - 1; k >= 0; --k) {
        const std::function<double(const Vector&)> v_next_raw =
            (k == N - 1) ? std::function<double(const Vector&)>([](const Vector&) { return 0.0; })
                         : std::function<double(const Vector&)>([&model, k](const Vector& x) {
                               return rbf_eval(model, k + 1, x);
                           });
        const std::uint64_t stage_key =
            resample_per_stage ? static_cast<std::uint64_t>(k + 1) : 1;
        StageFit fit = fit_stage_reach_avoid(problem, model, v_next_raw, sample, stage_key, opts);
        model.weights.row(k) = fit.weights.transpose();
        model.has_weights[static_cast<size_t>(k)] = 1;

        StageFitStats stats;
        stats.stage = k;
        stats.objective = fit.objective;
        stats.iterations = fit.iterations;
        for (const auto& x : fit.states) {
            const double here = clamp01(rbf_eval(model, k, x));
            const double next = (k == N - 1)
                                    ? 0.0
                                    : clamp01(rbf_eval(model, k + 1, x));
            if (here < next - report.monotonicity_slack) ++stats.monotonicity_violations;
        }
        report.stages.push_back(stats);
    }
    return report;
}

RbfEvaluable::RbfEvaluable(RbfModel model, std::function<bool(const Vector&)> in_safe,
                           std::function<bool(const Vector&)> in_target)
    : model_(std::move(model)), in_safe_(std::move(in_safe)), in_target_(std::move(in_target)) {}

double RbfEvaluable::value_at(int stage, const Vector& point) const {
    if (in_target_(point)) return 1.0;
    if (!in_safe_(point)) return 0.0;
    if (stage >= model_.horizon) return 0.0;  // terminal boundary
    return clamp01(rbf_eval(model_, stage, point));
}

}  // namespace stochreach
