#include "antichain/kernels.hpp"

#include "cell_work.hpp"

#include <atomic>

namespace antichain::kernels::omp {

std::uint64_t cover_cells(const SurfaceSpec& spec, int depth, int samples_per_cell) {
    const DyadicGrid domain(spec.n - 1, depth);
    const DyadicGrid heights(1, depth);
    const auto cells = static_cast<std::int64_t>(domain.cell_count());
    std::uint64_t count = 0;
#pragma omp parallel reduction(+ : count)
    {
        detail::SurfaceEvaluator ev(spec);
        std::vector<double> pt(static_cast<std::size_t>(spec.n - 1));
#pragma omp for schedule(static)
        for (std::int64_t cell = 0; cell < cells; ++cell) {
            count += detail::cover_column(ev, domain, heights, samples_per_cell,
                                          static_cast<std::uint64_t>(cell), pt);
        }
    }
    return count;
}

double polyline_length(const SingularFunctionSpec& f, int depth) {
    const std::uint64_t intervals = std::uint64_t{1} << depth;
    const std::uint64_t nblocks = (intervals + detail::kLengthBlock - 1) / detail::kLengthBlock;
    std::vector<double> partial(nblocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        const std::uint64_t begin = static_cast<std::uint64_t>(b) * detail::kLengthBlock;
        const std::uint64_t end = std::min(intervals, begin + detail::kLengthBlock);
        partial[static_cast<std::size_t>(b)] = detail::length_block(f, depth, begin, end).value();
    }
    // Combine in block order so the result does not depend on the thread count.
    detail::CompensatedSum total;
    for (double p : partial) {
        total.add(p);
    }
    return total.value();
}

Occupancy projection_occupancy(const ProjectionJob& job) {
    const int m = job.spec.n - 1;
    const DyadicGrid domain(m, job.params.domain_depth);
    const DyadicGrid image(m, job.params.image_depth);
    Occupancy out;
    out.cells.assign(image.cell_count(), 0);
    std::uint64_t members = 0;
    const auto cells = static_cast<std::int64_t>(domain.cell_count());
    const detail::SingularSetTable in_s(job.spec.f, job.probe);
#pragma omp parallel reduction(+ : members)
    {
        detail::SurfaceEvaluator ev(job.spec);
        std::vector<double> x(static_cast<std::size_t>(m));
        std::vector<double> img(static_cast<std::size_t>(m));
        auto mark = [&](std::uint64_t c) {
            std::atomic_ref<std::uint8_t>(out.cells[c]).store(1, std::memory_order_relaxed);
        };
#pragma omp for schedule(static)
        for (std::int64_t cell = 0; cell < cells; ++cell) {
            members += detail::project_cell(job, in_s, ev, domain, image, static_cast<std::uint64_t>(cell),
                                            x, img, mark);
        }
    }
    out.members = members;
    return out;
}

AntichainTally antichain_batch(const SurfaceSpec& spec, std::uint64_t pairs, std::uint64_t seed) {
    std::uint64_t total = 0;
    std::uint64_t ok = 0;
    std::uint64_t tol = 0;
    std::uint64_t bad = 0;
#pragma omp parallel reduction(+ : total, ok, tol, bad)
    {
        detail::SurfaceEvaluator ev(spec);
        std::vector<double> x(static_cast<std::size_t>(spec.n - 1));
        std::vector<double> y(x.size());
        AntichainTally local;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(pairs); ++i) {
            detail::antichain_trial(ev, seed, static_cast<std::uint64_t>(i), x, y, local);
        }
        total += local.pairs;
        ok += local.ordered_ok;
        tol += local.within_tolerance;
        bad += local.violations;
    }
    return {total, ok, tol, bad};
}

} // namespace antichain::kernels::omp
