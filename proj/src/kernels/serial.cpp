#include "antichain/kernels.hpp"

#include "cell_work.hpp"

namespace antichain::kernels::serial {

std::uint64_t cover_cells(const SurfaceSpec& spec, int depth, int samples_per_cell) {
    const DyadicGrid domain(spec.n - 1, depth);
    const DyadicGrid heights(1, depth);
    detail::SurfaceEvaluator ev(spec);
    std::vector<double> pt(static_cast<std::size_t>(spec.n - 1));
    std::uint64_t count = 0;
    for (std::uint64_t cell = 0; cell < domain.cell_count(); ++cell) {
        count += detail::cover_column(ev, domain, heights, samples_per_cell, cell, pt);
    }
    return count;
}

double polyline_length(const SingularFunctionSpec& f, int depth) {
    const std::uint64_t intervals = std::uint64_t{1} << depth;
    detail::CompensatedSum total;
    for (std::uint64_t b = 0; b < intervals; b += detail::kLengthBlock) {
        const std::uint64_t e = std::min(intervals, b + detail::kLengthBlock);
        total.add(detail::length_block(f, depth, b, e).value());
    }
    return total.value();
}

Occupancy projection_occupancy(const ProjectionJob& job) {
    const int m = job.spec.n - 1;
    const DyadicGrid domain(m, job.params.domain_depth);
    const DyadicGrid image(m, job.params.image_depth);
    Occupancy out;
    out.cells.assign(image.cell_count(), 0);
    const detail::SingularSetTable in_s(job.spec.f, job.probe);
    detail::SurfaceEvaluator ev(job.spec);
    std::vector<double> x(static_cast<std::size_t>(m));
    std::vector<double> img(static_cast<std::size_t>(m));
    for (std::uint64_t cell = 0; cell < domain.cell_count(); ++cell) {
        out.members += detail::project_cell(job, in_s, ev, domain, image, cell, x, img,
                                            [&](std::uint64_t c) { out.cells[c] = 1; });
    }
    return out;
}

AntichainTally antichain_batch(const SurfaceSpec& spec, std::uint64_t pairs, std::uint64_t seed) {
    detail::SurfaceEvaluator ev(spec);
    std::vector<double> x(static_cast<std::size_t>(spec.n - 1));
    std::vector<double> y(x.size());
    AntichainTally tally;
    for (std::uint64_t i = 0; i < pairs; ++i) {
        detail::antichain_trial(ev, seed, i, x, y, tally);
    }
    return tally;
}

} // namespace antichain::kernels::serial
