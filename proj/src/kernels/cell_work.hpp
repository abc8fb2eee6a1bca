#pragma once

// Per-cell work shared by the serial and OpenMP kernels. The two kernel
// files differ only in how they loop and reduce.

#include "antichain/grid.hpp"
#include "antichain/kernels.hpp"
#include "antichain/rng.hpp"
#include "antichain/surface.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace antichain::kernels::detail {

using antichain::detail::SurfaceEvaluator;

/// Neumaier compensated sum.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) noexcept {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    double value() const noexcept { return sum + carry; }
};

inline constexpr std::uint64_t kLengthBlock = 4096;

inline std::uint64_t ipow(std::uint64_t base, int exp) noexcept {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

/// Number of depth-k ambient cells met by the graph over one depth-k domain
/// cell. F is continuous and decreasing in every coordinate, so the graph
/// over the cell spans exactly the heights between its two extreme corners;
/// interior samples can only confirm that interval.
inline std::uint64_t cover_column(SurfaceEvaluator& ev, const DyadicGrid& domain,
                                  const DyadicGrid& heights, int samples, std::uint64_t cell,
                                  std::span<double> pt) {
    const int m = domain.dim();
    const double h = domain.side();
    for (int d = 0; d < m; ++d) {
        pt[d] = static_cast<double>(domain.axis_coord(cell, d)) * h;
    }
    const double top = ev.value(pt);
    for (int d = 0; d < m; ++d) {
        pt[d] = static_cast<double>(domain.axis_coord(cell, d) + 1) * h;
    }
    const double bottom = ev.value(pt);
    double lo = std::min(top, bottom);
    double hi = std::max(top, bottom);

    const std::uint64_t subs = ipow(static_cast<std::uint64_t>(samples), m);
    for (std::uint64_t sub = 0; sub < subs; ++sub) {
        std::uint64_t rem = sub;
        for (int d = 0; d < m; ++d) {
            const auto j = static_cast<double>(rem % static_cast<std::uint64_t>(samples));
            rem /= static_cast<std::uint64_t>(samples);
            pt[d] = (static_cast<double>(domain.axis_coord(cell, d)) + (j + 0.5) / samples) * h;
        }
        const double v = ev.value(pt);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return heights.axis_index(hi) - heights.axis_index(lo) + 1;
}

/// Polyline length over intervals [begin, end) of the depth-k dyadic partition.
inline CompensatedSum length_block(const SingularFunctionSpec& f, int depth, std::uint64_t begin,
                                   std::uint64_t end) {
    const double h = std::ldexp(1.0, -depth);
    CompensatedSum acc;
    double prev = antichain::detail::eval_unchecked(f, std::ldexp(static_cast<double>(begin), -depth)).value;
    for (std::uint64_t j = begin; j < end; ++j) {
        const double next =
            antichain::detail::eval_unchecked(f, std::ldexp(static_cast<double>(j + 1), -depth)).value;
        const double rise = next - prev;
        acc.add(std::sqrt(h * h + rise * rise));
        prev = next;
    }
    return acc;
}

/// Decides x in S for one probe. For salem the dyadic slope depends only on
/// the number of 1-digits among the first `depth`, so the decision is tabulated
/// once per job using the same expression as dyadic_slope.
class SingularSetTable {
public:
    SingularSetTable(const SingularFunctionSpec& f, const SingularSetProbe& probe)
        : f_(f), probe_(probe) {
        if (f.kind == SingularKind::salem) {
            by_ones_.resize(static_cast<std::size_t>(probe.depth) + 1);
            for (int ones = 0; ones <= probe.depth; ++ones) {
                const double log_slope = (probe.depth - ones) * std::log(2.0 * f.lambda) +
                                         ones * std::log(2.0 * (1.0 - f.lambda));
                by_ones_[static_cast<std::size_t>(ones)] = std::exp(log_slope) < probe.eps;
            }
        }
    }

    bool contains(double x) const noexcept {
        if (!by_ones_.empty()) {
            const auto cell = static_cast<std::uint64_t>(std::ldexp(x, probe_.depth));
            return by_ones_[static_cast<std::size_t>(std::popcount(cell))] != 0;
        }
        return antichain::detail::dyadic_slope_unchecked(f_, x, probe_.depth) < probe_.eps;
    }

private:
    SingularFunctionSpec f_;
    SingularSetProbe probe_;
    std::vector<std::uint8_t> by_ones_;
};

/// 1-based B-piece of x, or 0 when two or more coordinates fall outside S.
inline int classify(const SingularSetTable& in_s, std::span<const double> x) noexcept {
    int outside = 0;
    int position = 0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        if (!in_s.contains(x[d])) {
            ++outside;
            position = static_cast<int>(d) + 1;
            if (outside > 1) {
                return 0;
            }
        }
    }
    return outside == 0 ? static_cast<int>(x.size()) + 1 : position;
}

/// Image-grid cell of pi_axis(x, F(x)); writes the projected point to `img`.
inline std::uint64_t projected_cell(SurfaceEvaluator& ev, int axis, const DyadicGrid& image,
                                    std::span<const double> x, std::span<double> img) {
    const int n = ev.spec().n;
    if (axis == n) {
        std::copy(x.begin(), x.end(), img.begin());
    } else {
        std::size_t o = 0;
        for (int d = 0; d < n - 1; ++d) {
            if (d != axis - 1) {
                img[o++] = x[d];
            }
        }
        img[o] = ev.value(x);
    }
    std::uint64_t cell = 0;
    for (int d = 0; d < image.dim(); ++d) {
        cell |= image.axis_index(img[d]) << (image.depth() * d);
    }
    return cell;
}

/// Jittered samples in one domain cell; marks the image cell of each B_axis member.
template <class Mark>
std::uint64_t project_cell(const ProjectionJob& job, const SingularSetTable& in_s,
                           SurfaceEvaluator& ev, const DyadicGrid& domain,
                           const DyadicGrid& image, std::uint64_t cell, std::span<double> x,
                           std::span<double> img, Mark&& mark) {
    const int m = domain.dim();
    const auto s = static_cast<std::uint64_t>(job.params.samples_per_cell);
    const std::uint64_t subs = ipow(s, m);
    const double h = domain.side();
    const CounterRng rng(job.params.seed);
    std::uint64_t members = 0;
    for (std::uint64_t sub = 0; sub < subs; ++sub) {
        const std::uint64_t counter = cell * subs + sub;
        std::uint64_t rem = sub;
        for (int d = 0; d < m; ++d) {
            const auto j = static_cast<double>(rem % s);
            rem /= s;
            const double u = rng.open_unit(counter, static_cast<std::uint64_t>(d));
            x[d] = (static_cast<double>(domain.axis_coord(cell, d)) + (j + u) / static_cast<double>(s)) * h;
        }
        if (classify(in_s, x) != job.axis) {
            continue;
        }
        ++members;
        mark(projected_cell(ev, job.axis, image, x, img));
    }
    return members;
}

inline void antichain_trial(SurfaceEvaluator& ev, std::uint64_t seed, std::uint64_t index,
                            std::span<double> x, std::span<double> y, AntichainTally& tally) {
    antichain::detail::make_comparable_pair(seed, index, x, y);
    const PairCheck c = antichain::detail::check_pair_unchecked(ev, x, y);
    ++tally.pairs;
    if (c.verdict == Verdict::violation) {
        ++tally.violations;
    } else if (c.verdict == Verdict::ordered_ok) {
        ++tally.ordered_ok;
        if (c.within_tolerance) {
            ++tally.within_tolerance;
        }
    }
}

} // namespace antichain::kernels::detail
