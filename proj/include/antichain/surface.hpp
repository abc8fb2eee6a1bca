#pragma once

#include "antichain/exec.hpp"
#include "antichain/singular.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace antichain {

/// A point of the open cube (0,1)^dim.
class Point {
public:
    /// Throws DomainError unless every coordinate lies strictly inside (0,1).
    explicit Point(std::vector<double> coords);

    std::size_t dim() const noexcept { return coords_.size(); }
    std::span<const double> coords() const noexcept { return coords_; }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

/// The surface F(x) = 1 - p(f(x_1), ..., f(x_{n-1})) over (0,1)^{n-1},
/// whose graph is the antichain in [0,1]^n.
struct SurfaceSpec {
    int n = 3;
    SingularFunctionSpec f = SingularFunctionSpec::salem(0.25);

    /// Throws ConfigError for n < 2 or a non-strictly increasing f.
    static SurfaceSpec make(int n, SingularFunctionSpec f);
    void validate() const;
};

struct SurfaceValue {
    double value = 0.0;
    double error = 0.0;
};

/// p(x) = P / (1 - M + P), M the largest coordinate and P the product of
/// the others; p(x) = x in one dimension. Coordinates must lie in (0,1).
double p_eval(std::span<const double> x);

/// The same value read off geometrically for dim 2: the diagonal point hit
/// by the line through x from (1,0) (on/below the diagonal) or (0,1) (above).
double p_projective_crosscheck(std::span<const double> x);

SurfaceValue F_eval(const SurfaceSpec& spec, std::span<const double> x);
Point graph_point(const SurfaceSpec& spec, std::span<const double> x);

/// g(t) = F(fixed..., t); strictly decreasing from 1 to 0. Requires n >= 3.
SurfaceValue section(const SurfaceSpec& spec, std::span<const double> fixed, double t);

enum class Verdict { incomparable, ordered_ok, violation };

const char* to_string(Verdict v) noexcept;

struct PairCheck {
    Verdict verdict = Verdict::incomparable;
    /// |F(x) - F(y)| did not exceed the combined error bound.
    bool within_tolerance = false;
    /// x == y; reported as ordered_ok since the antichain condition
    /// concerns distinct points.
    bool equal = false;
    /// F(lower) - F(upper) for an ordered pair, else 0.
    double gap = 0.0;
    double tolerance = 0.0;
};

PairCheck check_antichain_pair(const SurfaceSpec& spec, std::span<const double> x,
                               std::span<const double> y);

struct AntichainTally {
    std::uint64_t pairs = 0;
    std::uint64_t ordered_ok = 0;
    std::uint64_t within_tolerance = 0;
    std::uint64_t violations = 0;

    friend bool operator==(const AntichainTally&, const AntichainTally&) = default;
};

/// Checks `pairs` seeded comparable pairs (x < y componentwise, in either
/// argument order) and tallies the verdicts.
AntichainTally check_antichain_batch(const SurfaceSpec& spec, std::uint64_t pairs,
                                     std::uint64_t seed, Exec exec = Exec::parallel);

namespace detail {

/// p on the closed cube, for grid kernels that evaluate cell corners.
/// Sorts `x` in place. Requires 1 - max + product > 0.
double p_sorted_inplace(std::span<double> x) noexcept;

/// Error-free-of-checks F evaluator with its own scratch buffer; one per thread.
class SurfaceEvaluator {
public:
    explicit SurfaceEvaluator(const SurfaceSpec& spec);

    /// F on the closed cube [0,1]^{n-1}, value only.
    double value(std::span<const double> x);
    /// F with propagated error bound; x in (0,1)^{n-1}.
    SurfaceValue evaluate(std::span<const double> x);

    const SurfaceSpec& spec() const noexcept { return spec_; }

private:
    SurfaceSpec spec_;
    std::vector<double> scratch_;
};

/// One seeded comparable pair. Deterministic in (seed, index).
void make_comparable_pair(std::uint64_t seed, std::uint64_t index, std::span<double> x,
                          std::span<double> y) noexcept;

/// Check a comparable pair without re-validating inputs.
PairCheck check_pair_unchecked(SurfaceEvaluator& evaluator, std::span<const double> x,
                               std::span<const double> y);

} // namespace detail

} // namespace antichain
