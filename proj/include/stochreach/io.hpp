#pragma once

#include "stochreach/dp.hpp"
#include "stochreach/harness.hpp"
#include "stochreach/rbf.hpp"

#include <optional>
#include <string>

namespace stochreach {

/// Shortest round-trip decimal form; identical input bits give identical text.
std::string format_double(double v);

/// CSV columns: stage,cell[,i0,i1,...],value — multi-index columns only when
/// a grid is given.
void write_value_table_csv(const std::string& path, const ValueTable& table,
                           const StateGrid* grid = nullptr);

void write_mask_csv(const std::string& path, const RegionMask& mask,
                    const StateGrid* grid = nullptr);

void write_policy_csv(const std::string& path, const PolicyTable& policy);

/// CSV columns: action,from,to,prob.
void write_kernel_csv(const std::string& path, const TransitionModel& model);
TransitionModel read_kernel_csv(const std::string& path);

/// Compact binary kernel format for reuse across runs.
void write_kernel_binary(const std::string& path, const TransitionModel& model);
TransitionModel read_kernel_binary(const std::string& path);

struct StoredValueTable {
    ValueTable table;
    std::optional<StateGrid> grid;
};

void write_value_table_json(const std::string& path, const ValueTable& table,
                            const StateGrid* grid = nullptr);
StoredValueTable read_value_table_json(const std::string& path);

void write_rbf_json(const std::string& path, const RbfModel& model);
RbfModel read_rbf_json(const std::string& path);

/// CSV columns: method,timestep,distance.
void write_error_report_csv(const std::string& path, const ErrorReport& report);

/// CSV columns: name,seconds.
void write_timing_csv(const std::string& path, const std::vector<TimedRun>& runs);

}  // namespace stochreach
