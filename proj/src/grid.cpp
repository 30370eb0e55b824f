#include "stochreach/grid.hpp"

#include <cmath>
#include <numeric>

namespace stochreach {

StateGrid::StateGrid(std::vector<int> dims, Vector lower, Vector upper)
    : dims_(std::move(dims)), lower_(std::move(lower)), upper_(std::move(upper)) {
    if (dims_.empty()) throw std::invalid_argument("StateGrid: no axes");
    if (lower_.size() != axes() || upper_.size() != axes())
        throw std::invalid_argument("StateGrid: bounds dimension mismatch");
    long long cells = 1;
    for (int a = 0; a < axes(); ++a) {
        if (dims_[static_cast<size_t>(a)] < 1)
            throw std::invalid_argument("StateGrid: cell count must be >= 1");
        if (!(upper_[a] > lower_[a]))
            throw std::invalid_argument("StateGrid: upper bound must exceed lower bound");
        cells *= dims_[static_cast<size_t>(a)];
        if (cells > (1ll << 31))
            throw std::invalid_argument("StateGrid: too many cells");
    }
    num_cells_ = static_cast<int>(cells);
}

Vector StateGrid::cell_width() const {
    Vector w(axes());
    for (int a = 0; a < axes(); ++a)
        w[a] = (upper_[a] - lower_[a]) / dims_[static_cast<size_t>(a)];
    return w;
}

std::vector<int> StateGrid::multi_index(int cell) const {
    if (cell < 0 || cell >= num_cells_)
        throw std::out_of_range("StateGrid::multi_index: not a grid cell");
    std::vector<int> mi(static_cast<size_t>(axes()));
    for (int a = axes() - 1; a >= 0; --a) {
        const int d = dims_[static_cast<size_t>(a)];
        mi[static_cast<size_t>(a)] = cell % d;
        cell /= d;
    }
    return mi;
}

int StateGrid::flat_index(const std::vector<int>& mi) const {
    if (static_cast<int>(mi.size()) != axes())
        throw std::invalid_argument("StateGrid::flat_index: axis count mismatch");
    int idx = 0;
    for (int a = 0; a < axes(); ++a) {
        const int d = dims_[static_cast<size_t>(a)];
        const int i = mi[static_cast<size_t>(a)];
        if (i < 0 || i >= d) throw std::out_of_range("StateGrid::flat_index: index out of range");
        idx = idx * d + i;
    }
    return idx;
}

Vector StateGrid::center(int cell) const {
    const auto mi = multi_index(cell);
    const Vector w = cell_width();
    Vector c(axes());
    for (int a = 0; a < axes(); ++a)
        c[a] = lower_[a] + (mi[static_cast<size_t>(a)] + 0.5) * w[a];
    return c;
}

int StateGrid::locate(const Vector& x) const {
    if (x.size() != axes()) throw std::invalid_argument("StateGrid::locate: dimension mismatch");
    const Vector w = cell_width();
    int idx = 0;
    for (int a = 0; a < axes(); ++a) {
        const double v = x[a];
        if (!(v >= lower_[a]) || !(v <= upper_[a])) return out_cell();
        int i = static_cast<int>(std::floor((v - lower_[a]) / w[a]));
        const int d = dims_[static_cast<size_t>(a)];
        if (i >= d) i = d - 1;  // v == upper: last box is closed
        if (i < 0) i = 0;
        idx = idx * d + i;
    }
    return idx;
}

int RegionMask::count() const {
    int n = 0;
    for (char c : member) n += (c != 0);
    return n;
}

bool RegionMask::is_subset_of(const RegionMask& other) const {
    if (member.size() != other.member.size())
        throw std::invalid_argument("RegionMask::is_subset_of: size mismatch");
    for (size_t i = 0; i < member.size(); ++i)
        if (member[i] && !other.member[i]) return false;
    return true;
}

Vector RegionMask::indicator() const {
    Vector v(size());
    for (int i = 0; i < size(); ++i) v[i] = member[static_cast<size_t>(i)] ? 1.0 : 0.0;
    return v;
}

std::vector<int> RegionMask::members() const {
    std::vector<int> out;
    out.reserve(member.size());
    for (int i = 0; i < size(); ++i)
        if (member[static_cast<size_t>(i)]) out.push_back(i);
    return out;
}

RegionMask complement(const RegionMask& mask) {
    RegionMask out;
    out.name = mask.name.empty() ? std::string("complement") : ("not_" + mask.name);
    out.member.resize(mask.member.size());
    for (size_t i = 0; i < mask.member.size(); ++i) out.member[i] = mask.member[i] ? 0 : 1;
    return out;
}

RegionMask mask_from_predicate(const StateGrid& grid,
                               const std::function<bool(const Vector&)>& predicate,
                               std::string name) {
    RegionMask mask;
    mask.name = std::move(name);
    mask.member.assign(static_cast<size_t>(grid.num_states()), 0);
    for (int c = 0; c < grid.num_cells(); ++c)
        mask.member[static_cast<size_t>(c)] = predicate(grid.center(c)) ? 1 : 0;
    return mask;
}

}  // namespace stochreach
