// Serial (threads=1) versus OpenMP runs of the miners and the index build on
// a generated network.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "themetruss/index.hpp"
#include "themetruss/miners.hpp"
#include "themetruss/synth.hpp"

namespace {

using namespace themetruss;

const DatabaseNetwork& network() {
  static const DatabaseNetwork g = [] {
    SynthConfig cfg;
    cfg.n_vertices = 2000;
    cfg.n_edges = 10000;
    cfg.n_seeds = 20;
    cfg.n_items = 50;
    return generate(cfg);
  }();
  return g;
}

int threads_arg(const benchmark::State& state) { return static_cast<int>(state.range(0)); }

void BM_tcfi(benchmark::State& state) {
  MiningOptions opts;
  opts.threads = threads_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(tcfi(network(), Rational(0), opts));
}

void BM_tcfa(benchmark::State& state) {
  MiningOptions opts;
  opts.threads = threads_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(tcfa(network(), Rational(0), opts));
}

void BM_tcs(benchmark::State& state) {
  TcsOptions opts;
  opts.threads = threads_arg(state);
  opts.max_len = 3;
  for (auto _ : state) benchmark::DoNotOptimize(tcs(network(), Rational(0), Rational(0), opts));
}

void BM_build_index(benchmark::State& state) {
  IndexBuildOptions opts;
  opts.threads = threads_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(build_tctree(network(), opts));
}

void thread_args(benchmark::internal::Benchmark* b) {
  b->Arg(1)->Arg(4);
  const int hw = omp_get_max_threads();
  if (hw > 4) b->Arg(hw);
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_tcfi)->Apply(thread_args);
BENCHMARK(BM_tcfa)->Apply(thread_args);
BENCHMARK(BM_tcs)->Apply(thread_args)->Iterations(1);
BENCHMARK(BM_build_index)->Apply(thread_args);

BENCHMARK_MAIN();
