#pragma once

#include "stochreach/common.hpp"

#include <string>
#include <vector>

namespace stochreach {

/// Uniform rectangular discretization of the state space. Cells partition the
/// box [lower, upper] into half-open boxes [lo + i*w, lo + (i+1)*w) per axis,
/// the last box closed. State index num_cells() is reserved for the absorbing
/// out-of-domain cell; it has no geometry.
class StateGrid {
  public:
    StateGrid() = default;
    StateGrid(std::vector<int> dims, Vector lower, Vector upper);

    int axes() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    const Vector& lower() const { return lower_; }
    const Vector& upper() const { return upper_; }
    Vector cell_width() const;

    int num_cells() const { return num_cells_; }
    /// Grid cells plus the trailing out-of-domain cell.
    int num_states() const { return num_cells_ + 1; }
    int out_cell() const { return num_cells_; }

    std::vector<int> multi_index(int cell) const;
    int flat_index(const std::vector<int>& mi) const;
    /// Representative point (center) of a grid cell; not defined for the
    /// out-of-domain cell.
    Vector center(int cell) const;
    /// Containing cell of a point, or out_cell() if outside the box.
    int locate(const Vector& x) const;

  private:
    std::vector<int> dims_;
    Vector lower_, upper_;
    int num_cells_ = 0;
};

/// Boolean membership over model states (grid cells + out-of-domain cell for
/// gridded models, plain state indices otherwise).
struct RegionMask {
    std::string name;
    std::vector<char> member;

    int size() const { return static_cast<int>(member.size()); }
    bool contains(int state) const { return member[static_cast<size_t>(state)] != 0; }
    int count() const;
    bool empty() const { return count() == 0; }
    bool is_subset_of(const RegionMask& other) const;
    /// 0/1 vector, one entry per state.
    Vector indicator() const;
    std::vector<int> members() const;
};

RegionMask complement(const RegionMask& mask);

/// Marks every grid cell whose center satisfies the predicate. The
/// out-of-domain cell is never a member.
RegionMask mask_from_predicate(const StateGrid& grid,
                               const std::function<bool(const Vector&)>& predicate,
                               std::string name = {});

}  // namespace stochreach
