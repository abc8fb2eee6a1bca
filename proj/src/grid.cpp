#include "antichain/grid.hpp"

#include "antichain/errors.hpp"

#include <cmath>
#include <string>

namespace antichain {

DyadicGrid::DyadicGrid(int dim, int depth) : dim_(dim), depth_(depth) {
    if (dim < 1 || depth < 1) {
        throw ConfigError("DyadicGrid: dim and depth must be >= 1");
    }
    if (dim * depth > 62) {
        throw ResourceError("DyadicGrid: 2^(" + std::to_string(dim * depth) +
                            ") cells do not fit a 64-bit index");
    }
}

double DyadicGrid::side() const noexcept { return std::ldexp(1.0, -depth_); }

double DyadicGrid::diameter() const noexcept { return side() * std::sqrt(static_cast<double>(dim_)); }

std::uint64_t DyadicGrid::axis_index(double v) const noexcept {
    const double scaled = std::floor(std::ldexp(v, depth_));
    if (scaled <= 0.0) {
        return 0;
    }
    const auto idx = static_cast<std::uint64_t>(scaled);
    return idx >= cells_per_axis() ? cells_per_axis() - 1 : idx;
}

std::uint64_t DyadicGrid::cell_of(std::span<const double> point) const {
    if (point.size() != static_cast<std::size_t>(dim_)) {
        throw DomainError("DyadicGrid::cell_of: dimension mismatch");
    }
    std::uint64_t cell = 0;
    for (int d = 0; d < dim_; ++d) {
        const double v = point[d];
        if (!(v >= 0.0 && v <= 1.0)) {
            throw DomainError("DyadicGrid::cell_of: point outside the unit cube");
        }
        cell |= axis_index(v) << (depth_ * d);
    }
    return cell;
}

std::vector<double> DyadicGrid::lower_corner(std::uint64_t cell) const {
    std::vector<double> corner(dim_);
    for (int d = 0; d < dim_; ++d) {
        corner[d] = std::ldexp(static_cast<double>(axis_coord(cell, d)), -depth_);
    }
    return corner;
}

} // namespace antichain
