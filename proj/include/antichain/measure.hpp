#pragma once

#include "antichain/exec.hpp"
#include "antichain/singular.hpp"
#include "antichain/surface.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace antichain {

/// Caps the number of function evaluations an estimator may perform.
struct Budget {
    std::uint64_t max_evaluations = 100'000'000;

    /// Default budget, overridden by ANTICHAIN_EVAL_BUDGET when set.
    static Budget from_env();
    /// Throws ResourceError if `evaluations` exceeds the cap.
    void require(double evaluations, const char* what) const;
};

/// Volume of the s-dimensional ball of radius 1/2: pi^(s/2) / (2^s Gamma(s/2 + 1)).
double alpha(double s);

/// One grid-cover evaluation of the s-dimensional Hausdorff pre-measure:
/// value = alpha(s) * count * delta^s with delta the cell diameter.
struct CoverEstimate {
    double s = 0.0;
    int depth = 0;
    double delta = 0.0;
    std::uint64_t count = 0;
    double value = 0.0;
};

CoverEstimate cover_estimate(const SurfaceSpec& spec, double s, int k, int samples_per_cell,
                             const Budget& budget = {}, Exec exec = Exec::parallel);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y ~ slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Box-counting dimension: slope of log2 N(k) against k.
struct DimensionEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::vector<int> depths;
    std::vector<std::uint64_t> counts;
};

DimensionEstimate box_dimension(const SurfaceSpec& spec, int k_min, int k_max, int samples_per_cell,
                                const Budget& budget = {}, Exec exec = Exec::parallel);

/// Length of the polyline through (j 2^-k, F(j 2^-k)), j = 0..2^k, for n = 2.
double graph_length_n2(const SurfaceSpec& spec, int k, const Budget& budget = {},
                       Exec exec = Exec::parallel);

/// Which piece B_i of the domain x falls in (1-based), given the probe's
/// stand-in for S: B_n when every coordinate is in S, B_i when only x_i is
/// not. Points with two or more coordinates outside S belong to no piece.
std::optional<int> classify_b(const SurfaceSpec& spec, const SingularSetProbe& probe,
                              std::span<const double> x);

/// Membership in B_axis straight from its definition; used to check classify_b.
bool in_b(const SurfaceSpec& spec, const SingularSetProbe& probe, std::span<const double> x,
          int axis);

struct ProjectionParams {
    int domain_depth = 10;
    int image_depth = 6;
    int samples_per_cell = 1;
    std::uint64_t seed = 0;
};

struct ProjectionEstimate {
    int axis = 0;
    double area = 0.0;
    SingularSetProbe probe;
    int grid_depth = 0;
    int domain_depth = 0;
    std::uint64_t occupied = 0;
    std::uint64_t samples = 0;
    /// Samples that landed in B_axis.
    std::uint64_t members = 0;
};

/// Lebesgue measure of pi_axis(A_axis), estimated by the fraction of
/// image-grid cells hit by jittered domain samples from B_axis.
ProjectionEstimate projection_measure(const SurfaceSpec& spec, int axis,
                                      const SingularSetProbe& probe, const ProjectionParams& params,
                                      const Budget& budget = {}, Exec exec = Exec::parallel);

/// Area of the image-grid cells hit by pi_axis of the graph points over `domain`.
double projected_area(const SurfaceSpec& spec, int axis, int image_depth,
                      std::span<const Point> domain);

struct LowerBound {
    std::vector<ProjectionEstimate> axes;
    double total = 0.0;
};

/// Sum over every axis of projection_measure.
LowerBound lower_bound_total(const SurfaceSpec& spec, const SingularSetProbe& probe,
                             const ProjectionParams& params, const Budget& budget = {},
                             Exec exec = Exec::parallel);

} // namespace antichain
