#include "antichain/surface.hpp"

#include "antichain/errors.hpp"
#include "antichain/kernels.hpp"
#include "antichain/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace antichain {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Largest coordinate is clipped this far below 1 when bounding the Lipschitz constant.
constexpr double kCornerClip = 1e-9;

void require_open_cube(std::span<const double> x, const char* what) {
    for (double c : x) {
        if (!(c > 0.0 && c < 1.0)) {
            throw DomainError(std::string(what) + ": coordinates must lie strictly inside (0, 1)");
        }
    }
}

void require_dim(std::span<const double> x, std::size_t expected, const char* what) {
    if (x.size() != expected) {
        throw DomainError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                          ", got " + std::to_string(x.size()));
    }
}

} // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) {
        throw DomainError("Point: dimension must be >= 1");
    }
    require_open_cube(coords_, "Point");
}

SurfaceSpec SurfaceSpec::make(int n, SingularFunctionSpec f) {
    SurfaceSpec s{n, f};
    s.validate();
    return s;
}

void SurfaceSpec::validate() const {
    if (n < 2) {
        throw ConfigError("surface dimension n must be >= 2");
    }
    f.validate();
    if (!f.strictly_increasing()) {
        throw ConfigError("surface requires a strictly increasing f; " + to_string(f.kind) +
                          " is only weakly monotone");
    }
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::incomparable:
        return "incomparable";
    case Verdict::ordered_ok:
        return "ordered_ok";
    case Verdict::violation:
        return "violation";
    }
    return "unknown";
}

namespace detail {

double p_sorted_inplace(std::span<double> x) noexcept {
    if (x.size() == 1) {
        return x[0];
    }
    // Tied coordinates are equal values, so any sort yields the same (P, M).
    std::sort(x.begin(), x.end());
    double product = 1.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        product *= x[i];
    }
    const double largest = x.back();
    return product / (1.0 - largest + product);
}

SurfaceEvaluator::SurfaceEvaluator(const SurfaceSpec& spec)
    : spec_(spec), scratch_(static_cast<std::size_t>(spec.n - 1)) {}

double SurfaceEvaluator::value(std::span<const double> x) {
    for (std::size_t i = 0; i < scratch_.size(); ++i) {
        scratch_[i] = eval_unchecked(spec_.f, x[i]).value;
    }
    return 1.0 - p_sorted_inplace(scratch_);
}

SurfaceValue SurfaceEvaluator::evaluate(std::span<const double> x) {
    double input_error = 0.0;
    for (std::size_t i = 0; i < scratch_.size(); ++i) {
        const Evaluation e = eval_unchecked(spec_.f, x[i]);
        scratch_[i] = e.value;
        input_error += e.error;
    }
    const double p = p_sorted_inplace(scratch_);
    double lipschitz = 1.0;
    if (scratch_.size() > 1) {
        double product = 1.0;
        for (std::size_t i = 0; i + 1 < scratch_.size(); ++i) {
            product *= scratch_[i];
        }
        const double largest = std::min(scratch_.back(), 1.0 - kCornerClip);
        const double denom = 1.0 - largest + product;
        lipschitz = 4.0 / (denom * denom);
    }
    const double rounding = 4.0 * static_cast<double>(scratch_.size() + 2) * kEps;
    return {1.0 - p, lipschitz * input_error + rounding};
}

void make_comparable_pair(std::uint64_t seed, std::uint64_t index, std::span<double> x,
                          std::span<double> y) noexcept {
    const CounterRng rng(seed);
    const std::size_t dim = x.size();
    const bool small_steps = (rng.bits(index, 0xA11) & 1) != 0;
    bool any_step = false;
    for (std::size_t d = 0; d < dim; ++d) {
        x[d] = rng.open_unit(index, 2 * d);
        const bool tie = (rng.bits(index, 0x700 + d) & 3) == 0;
        if (tie) {
            y[d] = x[d];
            continue;
        }
        double v = rng.open_unit(index, 2 * d + 1);
        if (small_steps) {
            // log-uniform step size down to ~1e-9 of the remaining room
            v *= std::pow(10.0, -9.0 * rng.open_unit(index, 0x900 + d));
        }
        double yd = x[d] + v * (1.0 - x[d]);
        if (yd >= 1.0) {
            yd = std::nextafter(1.0, 0.0);
        }
        if (yd <= x[d]) {
            yd = std::nextafter(x[d], 1.0);
        }
        y[d] = yd;
        any_step = any_step || yd > x[d];
    }
    if (!any_step) {
        y[0] = std::nextafter(x[0], 1.0);
        if (y[0] >= 1.0) {
            x[0] = std::nextafter(x[0], 0.0);
            y[0] = std::nextafter(x[0], 1.0);
        }
    }
    if ((rng.bits(index, 0xB0B) & 1) != 0) {
        std::swap_ranges(x.begin(), x.end(), y.begin());
    }
}

PairCheck check_pair_unchecked(SurfaceEvaluator& evaluator, std::span<const double> x,
                               std::span<const double> y) {
    bool x_le_y = true;
    bool y_le_x = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x_le_y = x_le_y && x[i] <= y[i];
        y_le_x = y_le_x && y[i] <= x[i];
    }
    PairCheck out;
    if (x_le_y && y_le_x) {
        out.verdict = Verdict::ordered_ok;
        out.equal = true;
        return out;
    }
    if (!x_le_y && !y_le_x) {
        out.verdict = Verdict::incomparable;
        return out;
    }
    const auto lower = x_le_y ? x : y;
    const auto upper = x_le_y ? y : x;
    const SurfaceValue f_lower = evaluator.evaluate(lower);
    const SurfaceValue f_upper = evaluator.evaluate(upper);
    out.gap = f_lower.value - f_upper.value;
    out.tolerance = f_lower.error + f_upper.error;
    if (out.gap > out.tolerance) {
        out.verdict = Verdict::ordered_ok;
    } else if (-out.gap > out.tolerance) {
        out.verdict = Verdict::violation;
    } else {
        out.verdict = Verdict::ordered_ok;
        out.within_tolerance = true;
    }
    return out;
}

} // namespace detail

double p_eval(std::span<const double> x) {
    if (x.empty()) {
        throw DomainError("p_eval: dimension must be >= 1");
    }
    require_open_cube(x, "p_eval");
    std::vector<double> sorted(x.begin(), x.end());
    return detail::p_sorted_inplace(sorted);
}

double p_projective_crosscheck(std::span<const double> x) {
    require_dim(x, 2, "p_projective_crosscheck");
    require_open_cube(x, "p_projective_crosscheck");
    // Line origin + tau * (x - origin) meets the diagonal where both coordinates agree.
    const bool below = x[1] <= x[0];
    const double ox = below ? 1.0 : 0.0;
    const double oy = below ? 0.0 : 1.0;
    const double dx = x[0] - ox;
    const double dy = x[1] - oy;
    const double tau = (oy - ox) / (dx - dy);
    return below ? oy + tau * dy : ox + tau * dx;
}

SurfaceValue F_eval(const SurfaceSpec& spec, std::span<const double> x) {
    spec.validate();
    require_dim(x, static_cast<std::size_t>(spec.n - 1), "F_eval");
    require_open_cube(x, "F_eval");
    detail::SurfaceEvaluator evaluator(spec);
    return evaluator.evaluate(x);
}

Point graph_point(const SurfaceSpec& spec, std::span<const double> x) {
    const SurfaceValue F = F_eval(spec, x);
    std::vector<double> coords(x.begin(), x.end());
    coords.push_back(F.value);
    return Point(std::move(coords));
}

SurfaceValue section(const SurfaceSpec& spec, std::span<const double> fixed, double t) {
    spec.validate();
    if (spec.n < 3) {
        throw DomainError("section: requires n >= 3 (for n = 2 the section is F itself)");
    }
    require_dim(fixed, static_cast<std::size_t>(spec.n - 2), "section");
    std::vector<double> x(fixed.begin(), fixed.end());
    x.push_back(t);
    return F_eval(spec, x);
}

PairCheck check_antichain_pair(const SurfaceSpec& spec, std::span<const double> x,
                               std::span<const double> y) {
    spec.validate();
    const auto dim = static_cast<std::size_t>(spec.n - 1);
    require_dim(x, dim, "check_antichain_pair");
    require_dim(y, dim, "check_antichain_pair");
    require_open_cube(x, "check_antichain_pair");
    require_open_cube(y, "check_antichain_pair");
    detail::SurfaceEvaluator evaluator(spec);
    return detail::check_pair_unchecked(evaluator, x, y);
}

AntichainTally check_antichain_batch(const SurfaceSpec& spec, std::uint64_t pairs,
                                     std::uint64_t seed, Exec exec) {
    spec.validate();
    return exec == Exec::serial ? kernels::serial::antichain_batch(spec, pairs, seed)
                                : kernels::omp::antichain_batch(spec, pairs, seed);
}

} // namespace antichain
