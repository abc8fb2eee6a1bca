// Serial reference vs OpenMP kernels on the workloads behind each estimator.

#include "antichain/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace antichain;

namespace {

const SurfaceSpec kPlane = SurfaceSpec::make(2, SingularFunctionSpec::salem(0.25));
const SurfaceSpec kSpace = SurfaceSpec::make(3, SingularFunctionSpec::salem(0.25));

template <auto Kernel>
void BM_Length(benchmark::State& state) {
    const auto depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(kPlane.f, depth));
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << depth));
}

template <auto Kernel>
void BM_Cover(benchmark::State& state) {
    const auto depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(kSpace, depth, 1));
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (2 * depth)));
}

template <auto Kernel>
void BM_Projection(benchmark::State& state) {
    const kernels::ProjectionJob job{kSpace, 1, SingularSetProbe{40, 0.01},
                                     ProjectionParams{static_cast<int>(state.range(0)), 6, 2, 0}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(job).members);
    }
}

template <auto Kernel>
void BM_Antichain(benchmark::State& state) {
    const auto pairs = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(kSpace, pairs, 0).violations);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs));
}

} // namespace

BENCHMARK(BM_Length<kernels::serial::polyline_length>)->Name("length/serial")->Arg(16)->Arg(20);
BENCHMARK(BM_Length<kernels::omp::polyline_length>)->Name("length/omp")->Arg(16)->Arg(20);
BENCHMARK(BM_Cover<kernels::serial::cover_cells>)->Name("cover/serial")->Arg(7)->Arg(9);
BENCHMARK(BM_Cover<kernels::omp::cover_cells>)->Name("cover/omp")->Arg(7)->Arg(9);
BENCHMARK(BM_Projection<kernels::serial::projection_occupancy>)->Name("projection/serial")->Arg(8);
BENCHMARK(BM_Projection<kernels::omp::projection_occupancy>)->Name("projection/omp")->Arg(8);
BENCHMARK(BM_Antichain<kernels::serial::antichain_batch>)->Name("antichain/serial")->Arg(100'000);
BENCHMARK(BM_Antichain<kernels::omp::antichain_batch>)->Name("antichain/omp")->Arg(100'000);

BENCHMARK_MAIN();
