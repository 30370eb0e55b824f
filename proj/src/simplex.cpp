#include "stochreach/simplex.hpp"

#include <cmath>
#include <map>

namespace stochreach {

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration-limit";
        case SolveStatus::SingularBasis: return "singular-basis";
    }
    return "unknown";
}

namespace {

enum class VarStatus { Basic, AtLower, AtUpper, FreeAtZero };

struct CanonicalRow {
    std::vector<std::pair<int, double>> coeffs;  // sorted by column, no zeros
    RowSense sense;
    double rhs;
};

/// Sorts and combines coefficients; returns false (infeasible) if an empty
/// row contradicts its right-hand side.
bool canonicalize(const LinearProgram& lp, bool merge, std::vector<CanonicalRow>& out) {
    std::vector<CanonicalRow> rows;
    rows.reserve(lp.rows.size());
    for (const auto& row : lp.rows) {
        std::map<int, double> acc;
        for (const auto& [j, c] : row.coeffs) acc[j] += c;
        CanonicalRow cr;
        cr.sense = row.sense;
        cr.rhs = row.rhs;
        for (const auto& [j, c] : acc)
            if (c != 0.0) cr.coeffs.emplace_back(j, c);
        if (cr.coeffs.empty()) {
            const bool ok = (cr.sense == RowSense::Le && cr.rhs >= 0.0) ||
                            (cr.sense == RowSense::Ge && cr.rhs <= 0.0) ||
                            (cr.sense == RowSense::Eq && cr.rhs == 0.0);
            if (!ok) return false;
            continue;
        }
        rows.push_back(std::move(cr));
    }
    if (!merge) {
        out = std::move(rows);
        return true;
    }
    // Rows with bit-identical coefficient vectors and the same sense reduce
    // to the binding one.
    std::map<std::pair<int, std::vector<std::pair<int, double>>>, size_t> seen;
    for (auto& cr : rows) {
        const auto key = std::make_pair(static_cast<int>(cr.sense), cr.coeffs);
        const auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(key, out.size());
            out.push_back(std::move(cr));
            continue;
        }
        CanonicalRow& kept = out[it->second];
        switch (cr.sense) {
            case RowSense::Le: kept.rhs = std::min(kept.rhs, cr.rhs); break;
            case RowSense::Ge: kept.rhs = std::max(kept.rhs, cr.rhs); break;
            case RowSense::Eq:
                if (kept.rhs != cr.rhs) return false;
                break;
        }
    }
    return true;
}

}  // namespace

SolveReport solve(const LinearProgram& lp, const SimplexOptions& opts) {
    lp.validate();
    SolveReport report;

    std::vector<CanonicalRow> rows;
    if (!canonicalize(lp, opts.merge_duplicate_rows, rows)) {
        report.status = SolveStatus::Infeasible;
        return report;
    }

    const int n = lp.num_vars();
    const int m = static_cast<int>(rows.size());
    const bool maximize = lp.objective_sense == Sense::Maximize;

    // Columns: structural | one slack per row | artificials as needed.
    std::vector<double> lo(static_cast<size_t>(n + m)), hi(static_cast<size_t>(n + m));
    for (int j = 0; j < n; ++j) {
        lo[static_cast<size_t>(j)] = lp.lower[j];
        hi[static_cast<size_t>(j)] = lp.upper[j];
    }
    for (int i = 0; i < m; ++i) {
        switch (rows[static_cast<size_t>(i)].sense) {
            case RowSense::Le: lo[static_cast<size_t>(n + i)] = 0.0; hi[static_cast<size_t>(n + i)] = kInf; break;
            case RowSense::Ge: lo[static_cast<size_t>(n + i)] = -kInf; hi[static_cast<size_t>(n + i)] = 0.0; break;
            case RowSense::Eq: lo[static_cast<size_t>(n + i)] = 0.0; hi[static_cast<size_t>(n + i)] = 0.0; break;
        }
    }

    // Initial non-basic assignment: the finite bound nearest zero; free at 0.
    std::vector<double> val(static_cast<size_t>(n + m), 0.0);
    std::vector<VarStatus> status(static_cast<size_t>(n + m), VarStatus::FreeAtZero);
    for (int j = 0; j < n + m; ++j) {
        const double l = lo[static_cast<size_t>(j)], u = hi[static_cast<size_t>(j)];
        if (std::isfinite(l) && (l >= 0.0 || !std::isfinite(u))) {
            val[static_cast<size_t>(j)] = l;
            status[static_cast<size_t>(j)] = VarStatus::AtLower;
        } else if (std::isfinite(u)) {
            val[static_cast<size_t>(j)] = u;
            status[static_cast<size_t>(j)] = VarStatus::AtUpper;
        } else if (std::isfinite(l)) {
            val[static_cast<size_t>(j)] = l;
            status[static_cast<size_t>(j)] = VarStatus::AtLower;
        }
    }

    // Row residuals with every variable at its initial assignment decide
    // whether the slack can start basic or an artificial is required.
    std::vector<double> residual(static_cast<size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        double s = rows[static_cast<size_t>(i)].rhs;
        for (const auto& [j, c] : rows[static_cast<size_t>(i)].coeffs)
            s -= c * val[static_cast<size_t>(j)];
        residual[static_cast<size_t>(i)] = s;  // slack sits at 0 initially
    }

    std::vector<int> basis(static_cast<size_t>(m), -1);
    std::vector<int> art_row;  // artificial k lives in row art_row[k]
    std::vector<double> art_sign;
    for (int i = 0; i < m; ++i) {
        const double v = residual[static_cast<size_t>(i)];
        if (v >= lo[static_cast<size_t>(n + i)] - 0.0 && v <= hi[static_cast<size_t>(n + i)] + 0.0) {
            basis[static_cast<size_t>(i)] = n + i;
        } else {
            art_row.push_back(i);
            art_sign.push_back(v >= 0.0 ? 1.0 : -1.0);
        }
    }
    const int n_art = static_cast<int>(art_row.size());
    const int n_all = n + m + n_art;

    // Dense tableau of all columns; starts as B^{-1} A with diagonal B.
    Matrix T = Matrix::Zero(m, n_all);
    for (int i = 0; i < m; ++i) {
        for (const auto& [j, c] : rows[static_cast<size_t>(i)].coeffs) T(i, j) = c;
        T(i, n + i) = 1.0;
    }
    lo.resize(static_cast<size_t>(n_all), 0.0);
    hi.resize(static_cast<size_t>(n_all), kInf);
    val.resize(static_cast<size_t>(n_all), 0.0);
    status.resize(static_cast<size_t>(n_all), VarStatus::AtLower);
    Vector beta = Vector::Zero(m);
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<size_t>(i)] == n + i) {
            beta[i] = residual[static_cast<size_t>(i)];
            status[static_cast<size_t>(n + i)] = VarStatus::Basic;
        }
    for (int k = 0; k < n_art; ++k) {
        const int i = art_row[static_cast<size_t>(k)];
        const int col = n + m + k;
        T(i, col) = art_sign[static_cast<size_t>(k)];
        if (art_sign[static_cast<size_t>(k)] < 0.0) T.row(i) = -T.row(i);  // B^{-1} row
        basis[static_cast<size_t>(i)] = col;
        status[static_cast<size_t>(col)] = VarStatus::Basic;
        beta[i] = std::abs(residual[static_cast<size_t>(i)]);
    }

    Vector cost_phase2 = Vector::Zero(n_all);
    for (int j = 0; j < n; ++j) cost_phase2[j] = maximize ? -lp.cost[j] : lp.cost[j];
    Vector cost_phase1 = Vector::Zero(n_all);
    for (int k = 0; k < n_art; ++k) cost_phase1[n + m + k] = 1.0;

    const long max_iters =
        opts.max_iterations > 0 ? opts.max_iterations : 200 + 50L * (n_all + m);

    const auto run_phase = [&](const Vector& cost) -> SolveStatus {
        while (true) {
            if (report.iterations >= max_iters) return SolveStatus::IterationLimit;

            Vector y(m);
            for (int i = 0; i < m; ++i) y[i] = cost[basis[static_cast<size_t>(i)]];
            const Vector z = T.transpose() * y;

            int enter = -1;
            int dir = 0;
            for (int j = 0; j < n_all; ++j) {
                if (status[static_cast<size_t>(j)] == VarStatus::Basic) continue;
                if (lo[static_cast<size_t>(j)] == hi[static_cast<size_t>(j)]) continue;  // fixed
                const double d = cost[j] - z[j];
                const bool can_inc = status[static_cast<size_t>(j)] == VarStatus::AtLower ||
                                     status[static_cast<size_t>(j)] == VarStatus::FreeAtZero;
                const bool can_dec = status[static_cast<size_t>(j)] == VarStatus::AtUpper ||
                                     status[static_cast<size_t>(j)] == VarStatus::FreeAtZero;
                if (can_inc && d < -opts.tol) { enter = j; dir = 1; break; }
                if (can_dec && d > opts.tol) { enter = j; dir = -1; break; }
            }
            if (enter < 0) return SolveStatus::Optimal;
            ++report.iterations;

            const double own_range = hi[static_cast<size_t>(enter)] - lo[static_cast<size_t>(enter)];
            double t_best = std::isfinite(own_range) ? own_range : kInf;
            int leave_row = -1;
            bool leave_to_upper = false;
            for (int i = 0; i < m; ++i) {
                const double g = dir * T(i, enter);
                if (std::abs(g) <= opts.pivot_tol) continue;
                const int bv = basis[static_cast<size_t>(i)];
                double t_i;
                bool to_upper;
                if (g > 0.0) {  // basic value decreases toward its lower bound
                    if (!std::isfinite(lo[static_cast<size_t>(bv)])) continue;
                    t_i = (beta[i] - lo[static_cast<size_t>(bv)]) / g;
                    to_upper = false;
                } else {  // basic value increases toward its upper bound
                    if (!std::isfinite(hi[static_cast<size_t>(bv)])) continue;
                    t_i = (hi[static_cast<size_t>(bv)] - beta[i]) / (-g);
                    to_upper = true;
                }
                if (t_i < 0.0) t_i = 0.0;  // rounding guard
                if (t_i < t_best ||
                    (t_i <= t_best && leave_row >= 0 &&
                     bv < basis[static_cast<size_t>(leave_row)])) {
                    t_best = t_i;
                    leave_row = i;
                    leave_to_upper = to_upper;
                }
            }

            if (!std::isfinite(t_best)) return SolveStatus::Unbounded;

            if (leave_row < 0) {
                // Bound flip: the entering variable crosses to its other bound.
                beta -= dir * t_best * T.col(enter);
                if (dir > 0) {
                    val[static_cast<size_t>(enter)] = hi[static_cast<size_t>(enter)];
                    status[static_cast<size_t>(enter)] = VarStatus::AtUpper;
                } else {
                    val[static_cast<size_t>(enter)] = lo[static_cast<size_t>(enter)];
                    status[static_cast<size_t>(enter)] = VarStatus::AtLower;
                }
                continue;
            }

            const double enter_new = val[static_cast<size_t>(enter)] + dir * t_best;
            const int leaving = basis[static_cast<size_t>(leave_row)];
            beta -= dir * t_best * T.col(enter);
            beta[leave_row] = enter_new;
            val[static_cast<size_t>(leaving)] =
                leave_to_upper ? hi[static_cast<size_t>(leaving)] : lo[static_cast<size_t>(leaving)];
            status[static_cast<size_t>(leaving)] =
                leave_to_upper ? VarStatus::AtUpper : VarStatus::AtLower;
            status[static_cast<size_t>(enter)] = VarStatus::Basic;
            basis[static_cast<size_t>(leave_row)] = enter;

            const double piv = T(leave_row, enter);
            if (std::abs(piv) <= opts.pivot_tol) return SolveStatus::SingularBasis;
            T.row(leave_row) /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == leave_row) continue;
                const double f = T(i, enter);
                if (f != 0.0) T.row(i) -= f * T.row(leave_row);
            }
        }
    };

    if (n_art > 0) {
        const SolveStatus s1 = run_phase(cost_phase1);
        if (s1 != SolveStatus::Optimal) {
            report.status = s1 == SolveStatus::Unbounded ? SolveStatus::SingularBasis : s1;
            return report;
        }
        double infeas = 0.0;
        for (int i = 0; i < m; ++i)
            if (basis[static_cast<size_t>(i)] >= n + m) infeas += std::abs(beta[i]);
        for (int k = 0; k < n_art; ++k) {
            const int col = n + m + k;
            if (status[static_cast<size_t>(col)] != VarStatus::Basic)
                infeas += std::abs(val[static_cast<size_t>(col)]);
        }
        double rhs_scale = 0.0;
        for (const auto& row : rows) rhs_scale = std::max(rhs_scale, std::abs(row.rhs));
        if (infeas > opts.tol * (1.0 + rhs_scale)) {
            report.status = SolveStatus::Infeasible;
            return report;
        }
        // Pin artificials at zero for phase 2.
        for (int k = 0; k < n_art; ++k) {
            const int col = n + m + k;
            lo[static_cast<size_t>(col)] = hi[static_cast<size_t>(col)] = 0.0;
            val[static_cast<size_t>(col)] = 0.0;
        }
    }

    const SolveStatus s2 = run_phase(cost_phase2);
    if (s2 != SolveStatus::Optimal) {
        report.status = s2;
        return report;
    }

    Vector x(n);
    for (int j = 0; j < n; ++j) x[j] = val[static_cast<size_t>(j)];
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<size_t>(i)] < n) x[basis[static_cast<size_t>(i)]] = beta[i];
    report.solution = x;
    report.objective = lp.cost.dot(x);
    report.status = SolveStatus::Optimal;
    return report;
}

}  // namespace stochreach
