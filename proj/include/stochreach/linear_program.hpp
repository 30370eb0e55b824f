#pragma once

#include "stochreach/common.hpp"

#include <limits>
#include <string>

namespace stochreach {

enum class Sense { Minimize, Maximize };
enum class RowSense { Le, Ge, Eq };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Sparse standard-form linear program: optimize cost'x subject to row
/// constraints and per-variable bounds (infinite bounds allowed).
struct LinearProgram {
    struct Row {
        std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
        RowSense sense = RowSense::Le;
        double rhs = 0.0;
    };

    Sense objective_sense = Sense::Minimize;
    Vector cost;
    Vector lower, upper;
    std::vector<Row> rows;
    std::vector<std::string> var_names;  // optional; empty or one per variable

    int num_vars() const { return static_cast<int>(cost.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    int add_variable(double lo, double hi, double cost_coeff, std::string name = {});
    void add_row(RowSense sense, double rhs, std::vector<std::pair<int, double>> coeffs);
    void validate() const;
};

/// Worst constraint-or-bound violation of a candidate point, computed from
/// the raw program data. Independent of any solver bookkeeping.
double max_violation(const LinearProgram& lp, const Vector& x);

double objective_value(const LinearProgram& lp, const Vector& x);

/// Human-readable dump (objective, rows, bounds) for external cross-checks.
std::string to_text(const LinearProgram& lp);

}  // namespace stochreach
