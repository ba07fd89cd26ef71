// Serial reference paths against the OpenMP paths, plus sparse against dense
// rank elimination.

#include <benchmark/benchmark.h>

#include "gctop/complex.hpp"
#include "gctop/enumerate.hpp"
#include "gctop/rank.hpp"

namespace {

// threads: 1 = serial reference, 0 = OpenMP default.
void BM_Enumerate(benchmark::State& state) {
  gctop::EnumOptions opts;
  opts.parallel.threads = static_cast<int>(state.range(0));
  const gctop::EnumSpec spec{5, 0, static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(gctop::enumerate_graphs(spec, opts));
}
BENCHMARK(BM_Enumerate)
    ->ArgNames({"threads", "edges"})
    ->Args({1, 8})
    ->Args({0, 8})
    ->Args({1, 12})
    ->Args({0, 12})
    ->Unit(benchmark::kMillisecond);

void BM_BoundaryMatrix(benchmark::State& state) {
  gctop::ComplexOptions eopts;
  const int p = static_cast<int>(state.range(1));
  gctop::GeneratorBasis source(5, 0, p, gctop::Mode::Full, eopts);
  gctop::GeneratorBasis target(5, 0, p - 1, gctop::Mode::Full, eopts);
  gctop::Parallelism par{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gctop::build_boundary_matrix(source, target, par));
  }
}
BENCHMARK(BM_BoundaryMatrix)
    ->ArgNames({"threads", "degree"})
    ->Args({1, 8})
    ->Args({0, 8})
    ->Args({1, 10})
    ->Args({0, 10})
    ->Unit(benchmark::kMillisecond);

void BM_Rank(benchmark::State& state) {
  gctop::ComplexOptions opts;
  const auto m = gctop::build_boundary_matrix(5, 0, static_cast<int>(state.range(1)),
                                              gctop::Mode::Full, opts);
  const int threshold = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gctop::rank_mod_p(m, gctop::kDefaultPrimaryPrime, threshold));
  }
  state.counters["rows"] = m.rows();
  state.counters["cols"] = m.cols();
}
// threshold 0: fully sparse; huge threshold: dense from the start.
BENCHMARK(BM_Rank)
    ->ArgNames({"dense_threshold", "degree"})
    ->Args({0, 8})
    ->Args({64, 8})
    ->Args({1 << 20, 8})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
