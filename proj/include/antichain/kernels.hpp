#pragma once

// Grid kernels behind the measure estimators. `serial` is the reference
// implementation; `omp` runs the same per-cell work under OpenMP and must
// return bit-identical results.

#include "antichain/measure.hpp"
#include "antichain/singular.hpp"
#include "antichain/surface.hpp"

#include <cstdint>
#include <vector>

namespace antichain::kernels {

struct ProjectionJob {
    SurfaceSpec spec;
    int axis = 1;
    SingularSetProbe probe;
    ProjectionParams params;
};

struct Occupancy {
    std::vector<std::uint8_t> cells;
    std::uint64_t members = 0;
};

namespace serial {

std::uint64_t cover_cells(const SurfaceSpec& spec, int depth, int samples_per_cell);
double polyline_length(const SingularFunctionSpec& f, int depth);
Occupancy projection_occupancy(const ProjectionJob& job);
AntichainTally antichain_batch(const SurfaceSpec& spec, std::uint64_t pairs, std::uint64_t seed);

} // namespace serial

namespace omp {

std::uint64_t cover_cells(const SurfaceSpec& spec, int depth, int samples_per_cell);
double polyline_length(const SingularFunctionSpec& f, int depth);
Occupancy projection_occupancy(const ProjectionJob& job);
AntichainTally antichain_batch(const SurfaceSpec& spec, std::uint64_t pairs, std::uint64_t seed);

} // namespace omp

} // namespace antichain::kernels
