#include "stochreach/linear_program.hpp"

#include <cmath>
#include <sstream>

namespace stochreach {

int LinearProgram::add_variable(double lo, double hi, double cost_coeff, std::string name) {
    const int idx = num_vars();
    cost.conservativeResize(idx + 1);
    lower.conservativeResize(idx + 1);
    upper.conservativeResize(idx + 1);
    cost[idx] = cost_coeff;
    lower[idx] = lo;
    upper[idx] = hi;
    if (!name.empty() || !var_names.empty()) {
        var_names.resize(static_cast<size_t>(idx) + 1);
        var_names[static_cast<size_t>(idx)] = std::move(name);
    }
    return idx;
}

void LinearProgram::add_row(RowSense sense, double rhs,
                            std::vector<std::pair<int, double>> coeffs) {
    Row row;
    row.sense = sense;
    row.rhs = rhs;
    row.coeffs = std::move(coeffs);
    rows.push_back(std::move(row));
}

void LinearProgram::validate() const {
    const int n = num_vars();
    if (lower.size() != n || upper.size() != n)
        throw std::invalid_argument("LinearProgram: bounds size mismatch");
    for (int j = 0; j < n; ++j) {
        if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j])
            throw std::invalid_argument("LinearProgram: bad bounds");
        if (!std::isfinite(cost[j]))
            throw std::invalid_argument("LinearProgram: non-finite cost");
    }
    for (const auto& row : rows) {
        if (!std::isfinite(row.rhs)) throw std::invalid_argument("LinearProgram: non-finite rhs");
        for (const auto& [j, c] : row.coeffs) {
            if (j < 0 || j >= n)
                throw std::invalid_argument("LinearProgram: row references unknown variable");
            if (!std::isfinite(c))
                throw std::invalid_argument("LinearProgram: non-finite coefficient");
        }
    }
}

double max_violation(const LinearProgram& lp, const Vector& x) {
    if (x.size() != lp.num_vars())
        throw std::invalid_argument("max_violation: point size mismatch");
    double worst = 0.0;
    for (int j = 0; j < lp.num_vars(); ++j) {
        worst = std::max(worst, lp.lower[j] - x[j]);
        worst = std::max(worst, x[j] - lp.upper[j]);
    }
    for (const auto& row : lp.rows) {
        double lhs = 0.0;
        for (const auto& [j, c] : row.coeffs) lhs += c * x[j];
        switch (row.sense) {
            case RowSense::Le: worst = std::max(worst, lhs - row.rhs); break;
            case RowSense::Ge: worst = std::max(worst, row.rhs - lhs); break;
            case RowSense::Eq: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
        }
    }
    return worst;
}

double objective_value(const LinearProgram& lp, const Vector& x) {
    return lp.cost.dot(x);
}

std::string to_text(const LinearProgram& lp) {
    std::ostringstream os;
    os.precision(17);
    const auto name = [&](int j) {
        if (j < static_cast<int>(lp.var_names.size()) && !lp.var_names[static_cast<size_t>(j)].empty())
            return lp.var_names[static_cast<size_t>(j)];
        return "x" + std::to_string(j);
    };
    os << (lp.objective_sense == Sense::Minimize ? "minimize" : "maximize") << "\n ";
    for (int j = 0; j < lp.num_vars(); ++j)
        if (lp.cost[j] != 0.0) os << " " << (lp.cost[j] >= 0 ? "+" : "") << lp.cost[j] << " " << name(j);
    os << "\nsubject to\n";
    for (const auto& row : lp.rows) {
        os << " ";
        for (const auto& [j, c] : row.coeffs)
            os << " " << (c >= 0 ? "+" : "") << c << " " << name(j);
        switch (row.sense) {
            case RowSense::Le: os << " <= "; break;
            case RowSense::Ge: os << " >= "; break;
            case RowSense::Eq: os << " = "; break;
        }
        os << row.rhs << "\n";
    }
    os << "bounds\n";
    for (int j = 0; j < lp.num_vars(); ++j)
        os << "  " << lp.lower[j] << " <= " << name(j) << " <= " << lp.upper[j] << "\n";
    return os.str();
}

}  // namespace stochreach
