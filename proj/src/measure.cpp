#include "antichain/measure.hpp"

#include "antichain/errors.hpp"
#include "antichain/grid.hpp"
#include "antichain/kernels.hpp"

#include "kernels/cell_work.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <string_view>

namespace antichain {

namespace {

void require_depth(int k, const char* what) {
    if (k < 1) {
        throw DomainError(std::string(what) + ": depth must be >= 1");
    }
}

void require_samples(int samples, const char* what) {
    if (samples < 1) {
        throw DomainError(std::string(what) + ": samples_per_cell must be >= 1");
    }
}

void require_probe_depth(const SurfaceSpec& spec, const SingularSetProbe& probe) {
    probe.validate();
    if (probe.depth > spec.f.depth) {
        throw PrecisionError("probe depth " + std::to_string(probe.depth) + " exceeds f depth " +
                             std::to_string(spec.f.depth));
    }
}

double cells_and_samples(int dim, int depth, int samples) {
    return std::ldexp(1.0, dim * depth) * std::pow(static_cast<double>(samples), dim);
}

} // namespace

Budget Budget::from_env() {
    Budget b;
    if (const char* env = std::getenv("ANTICHAIN_EVAL_BUDGET")) {
        const std::string_view sv(env);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (ec != std::errc{} || ptr != sv.data() + sv.size() || v == 0) {
            throw ConfigError("ANTICHAIN_EVAL_BUDGET must be a positive integer");
        }
        b.max_evaluations = v;
    }
    return b;
}

void Budget::require(double evaluations, const char* what) const {
    if (evaluations > static_cast<double>(max_evaluations)) {
        throw ResourceError(std::string(what) + ": " + std::to_string(evaluations) +
                            " evaluations exceed the budget of " + std::to_string(max_evaluations));
    }
}

double alpha(double s) {
    if (!(s >= 0.0)) {
        throw DomainError("alpha: s must be >= 0");
    }
    if (s <= 100.0) {
        return std::pow(std::numbers::pi, s / 2.0) / (std::exp2(s) * std::tgamma(s / 2.0 + 1.0));
    }
    return std::exp(s / 2.0 * std::log(std::numbers::pi) - s * std::numbers::ln2 -
                    std::lgamma(s / 2.0 + 1.0));
}

CoverEstimate cover_estimate(const SurfaceSpec& spec, double s, int k, int samples_per_cell,
                             const Budget& budget, Exec exec) {
    spec.validate();
    if (!(s >= 0.0)) {
        throw DomainError("cover_estimate: s must be >= 0");
    }
    require_depth(k, "cover_estimate");
    require_samples(samples_per_cell, "cover_estimate");
    const int m = spec.n - 1;
    budget.require(std::ldexp(1.0, m * k) * (2.0 + std::pow(static_cast<double>(samples_per_cell), m)),
                   "cover_estimate");
    const DyadicGrid ambient(spec.n, k);

    CoverEstimate out;
    out.s = s;
    out.depth = k;
    out.delta = ambient.diameter();
    out.count = exec == Exec::serial ? kernels::serial::cover_cells(spec, k, samples_per_cell)
                                     : kernels::omp::cover_cells(spec, k, samples_per_cell);
    out.value = alpha(s) * static_cast<double>(out.count) * std::pow(out.delta, s);
    return out;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DomainError("fit_line: x and y differ in length");
    }
    if (x.size() < 2) {
        throw InsufficientDataError("fit_line: need at least two points");
    }
    const auto count = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw InsufficientDataError("fit_line: x values are all equal");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += r * r;
    }
    fit.r2 = syy == 0.0 ? 1.0 : std::max(0.0, 1.0 - ss_res / syy);
    return fit;
}

DimensionEstimate box_dimension(const SurfaceSpec& spec, int k_min, int k_max, int samples_per_cell,
                                const Budget& budget, Exec exec) {
    spec.validate();
    require_depth(k_min, "box_dimension");
    if (k_max - k_min + 1 < 3) {
        throw InsufficientDataError("box_dimension: need at least three depths (k_min < k_max - 1)");
    }
    DimensionEstimate out;
    std::vector<double> ks;
    std::vector<double> logs;
    for (int k = k_min; k <= k_max; ++k) {
        const CoverEstimate c = cover_estimate(spec, 0.0, k, samples_per_cell, budget, exec);
        out.depths.push_back(k);
        out.counts.push_back(c.count);
        ks.push_back(k);
        logs.push_back(std::log2(static_cast<double>(c.count)));
    }
    const LinearFit fit = fit_line(ks, logs);
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    out.r2 = fit.r2;
    return out;
}

double graph_length_n2(const SurfaceSpec& spec, int k, const Budget& budget, Exec exec) {
    spec.validate();
    if (spec.n != 2) {
        throw DomainError("graph_length_n2: requires n = 2");
    }
    require_depth(k, "graph_length_n2");
    if (k > spec.f.depth) {
        throw PrecisionError("graph_length_n2: k exceeds f depth");
    }
    budget.require(std::ldexp(1.0, k), "graph_length_n2");
    return exec == Exec::serial ? kernels::serial::polyline_length(spec.f, k)
                                : kernels::omp::polyline_length(spec.f, k);
}

std::optional<int> classify_b(const SurfaceSpec& spec, const SingularSetProbe& probe,
                              std::span<const double> x) {
    spec.validate();
    require_probe_depth(spec, probe);
    if (x.size() != static_cast<std::size_t>(spec.n - 1)) {
        throw DomainError("classify_b: dimension mismatch");
    }
    for (double c : x) {
        if (!(c > 0.0 && c < 1.0)) {
            throw DomainError("classify_b: coordinates must lie in (0, 1)");
        }
    }
    const int piece = kernels::detail::classify(kernels::detail::SingularSetTable(spec.f, probe), x);
    if (piece == 0) {
        return std::nullopt;
    }
    return piece;
}

bool in_b(const SurfaceSpec& spec, const SingularSetProbe& probe, std::span<const double> x,
          int axis) {
    if (axis < 1 || axis > spec.n) {
        throw DomainError("in_b: axis out of range");
    }
    for (int j = 1; j <= spec.n - 1; ++j) {
        const bool in_s = in_singular_set(spec.f, probe, x[static_cast<std::size_t>(j - 1)]);
        const bool must_be_in_s = axis == spec.n || j != axis;
        if (in_s != must_be_in_s) {
            return false;
        }
    }
    return true;
}

ProjectionEstimate projection_measure(const SurfaceSpec& spec, int axis,
                                      const SingularSetProbe& probe, const ProjectionParams& params,
                                      const Budget& budget, Exec exec) {
    spec.validate();
    require_probe_depth(spec, probe);
    if (axis < 1 || axis > spec.n) {
        throw DomainError("projection_measure: axis must lie in [1, n]");
    }
    require_depth(params.domain_depth, "projection_measure");
    require_depth(params.image_depth, "projection_measure");
    require_samples(params.samples_per_cell, "projection_measure");
    const int m = spec.n - 1;
    const double samples = cells_and_samples(m, params.domain_depth, params.samples_per_cell);
    budget.require(samples, "projection_measure");

    const kernels::ProjectionJob job{spec, axis, probe, params};
    const kernels::Occupancy occ = exec == Exec::serial ? kernels::serial::projection_occupancy(job)
                                                        : kernels::omp::projection_occupancy(job);
    ProjectionEstimate out;
    out.axis = axis;
    out.probe = probe;
    out.grid_depth = params.image_depth;
    out.domain_depth = params.domain_depth;
    out.samples = static_cast<std::uint64_t>(samples);
    out.members = occ.members;
    for (std::uint8_t c : occ.cells) {
        out.occupied += c;
    }
    out.area = std::ldexp(static_cast<double>(out.occupied), -params.image_depth * m);
    return out;
}

double projected_area(const SurfaceSpec& spec, int axis, int image_depth,
                      std::span<const Point> domain) {
    spec.validate();
    if (axis < 1 || axis > spec.n) {
        throw DomainError("projected_area: axis must lie in [1, n]");
    }
    const int m = spec.n - 1;
    const DyadicGrid image(m, image_depth);
    std::vector<std::uint8_t> cells(image.cell_count(), 0);
    detail::SurfaceEvaluator ev(spec);
    std::vector<double> img(static_cast<std::size_t>(m));
    for (const Point& p : domain) {
        if (p.dim() != static_cast<std::size_t>(m)) {
            throw DomainError("projected_area: dimension mismatch");
        }
        cells[kernels::detail::projected_cell(ev, axis, image, p.coords(), img)] = 1;
    }
    std::uint64_t occupied = 0;
    for (std::uint8_t c : cells) {
        occupied += c;
    }
    return std::ldexp(static_cast<double>(occupied), -image_depth * m);
}

LowerBound lower_bound_total(const SurfaceSpec& spec, const SingularSetProbe& probe,
                             const ProjectionParams& params, const Budget& budget, Exec exec) {
    LowerBound out;
    for (int axis = 1; axis <= spec.n; ++axis) {
        out.axes.push_back(projection_measure(spec, axis, probe, params, budget, exec));
        out.total += out.axes.back().area;
    }
    return out;
}

} // namespace antichain
