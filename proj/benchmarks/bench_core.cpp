#include <benchmark/benchmark.h>

#include "atlas/generators.hpp"
#include "atlas/harmonic.hpp"
#include "atlas/martin.hpp"
#include "atlas/packing.hpp"
#include "atlas/tiling.hpp"
#include "atlas/walk.hpp"

namespace {

using namespace atlas;

PlanarNetwork hyp7(std::int64_t r) { return generate(Family{FamilyKind::kHyp7, {static_cast<std::size_t>(r)}}); }

void BM_SolveEscapeCG(benchmark::State& state) {
  const auto net = hyp7(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_escape(net).eta);
  state.SetLabel(std::to_string(net.num_vertices()) + " vertices");
}
BENCHMARK(BM_SolveEscapeCG)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_SolveEscapeDirect(benchmark::State& state) {
  const auto net = hyp7(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_escape(net, kDefaultSolveTol, SolverKind::kDirect).eta);
}
BENCHMARK(BM_SolveEscapeDirect)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_BuildTiling(benchmark::State& state) {
  const auto net = hyp7(state.range(0));
  const auto profile = solve_escape(net);
  for (auto _ : state) benchmark::DoNotOptimize(build_tiling(net, profile).eta);
}
BENCHMARK(BM_BuildTiling)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_CheckTiling(benchmark::State& state) {
  const auto net = hyp7(state.range(0));
  const auto t = build_tiling(net, solve_escape(net));
  for (auto _ : state) benchmark::DoNotOptimize(check_tiling(t, net, 7.0).ok());
}
BENCHMARK(BM_CheckTiling)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_PackHyperbolic(benchmark::State& state) {
  const auto net = hyp7(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(layout(net, pack_radii(net, PackingMode::kHyperbolicMaximal)).radius);
}
BENCHMARK(BM_PackHyperbolic)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_PackEuclidean(benchmark::State& state) {
  const auto net = hyp7(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(layout(net, pack_radii(net, PackingMode::kEuclideanFixedBoundary)).radius);
  }
}
BENCHMARK(BM_PackEuclidean)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_ExitMeasure(benchmark::State& state) {
  const auto net = hyp7(4);
  const auto t = build_tiling(net, solve_escape(net));
  for (auto _ : state) benchmark::DoNotOptimize(exit_measure(net, t, state.range(0), 1).max_deviation());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExitMeasure)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_MartinKernel(benchmark::State& state) {
  const auto net = hyp7(state.range(0));
  const auto t = build_tiling(net, solve_escape(net));
  const VertexId u = select_anchor(net, t, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(martin_kernel(net, u));
}
BENCHMARK(BM_MartinKernel)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
