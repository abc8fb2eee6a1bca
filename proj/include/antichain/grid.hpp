#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace antichain {

/// Decomposition of the unit cube into 2^(depth*dim) half-open cells of side
/// 2^-depth. Cells are numbered with `depth` bits per axis, axis 0 lowest.
/// The upper face (coordinate exactly 1) is folded into the last cell so
/// that graph endpoints on the closed cube are counted.
class DyadicGrid {
public:
    DyadicGrid(int dim, int depth);

    int dim() const noexcept { return dim_; }
    int depth() const noexcept { return depth_; }
    std::uint64_t cells_per_axis() const noexcept { return std::uint64_t{1} << depth_; }
    std::uint64_t cell_count() const noexcept { return std::uint64_t{1} << (depth_ * dim_); }
    double side() const noexcept;
    double diameter() const noexcept;

    std::uint64_t axis_index(double v) const noexcept;
    std::uint64_t axis_coord(std::uint64_t cell, int axis) const noexcept {
        return (cell >> (depth_ * axis)) & (cells_per_axis() - 1);
    }
    std::uint64_t cell_of(std::span<const double> point) const;
    std::vector<double> lower_corner(std::uint64_t cell) const;

private:
    int dim_;
    int depth_;
};

} // namespace antichain
