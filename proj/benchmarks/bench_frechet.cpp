#include <frechetspace/frechet.hpp>
#include <frechetspace/harness.hpp>
#include <frechetspace/morph.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace frechetspace;

namespace {

Polyline sized_polyline(std::uint64_t seed, int n, int dim = 2) {
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.dim = dim;
  cfg.min_vertices = n;
  cfg.max_vertices = n;
  std::mt19937_64 rng(seed);
  return random_polyline(rng, cfg);
}

void bm_discrete_frechet(benchmark::State& state) {
  const int n = int(state.range(0));
  const Polyline p = sized_polyline(1, n), q = sized_polyline(2, n);
  for (auto _ : state) benchmark::DoNotOptimize(discrete_frechet(p, q));
  state.SetComplexityN(n);
}
BENCHMARK(bm_discrete_frechet)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void bm_free_space_decision(benchmark::State& state) {
  const int n = int(state.range(0));
  const Polyline p = sized_polyline(1, n), q = sized_polyline(2, n);
  const double eps = 0.5 * discrete_frechet(p, q);
  for (auto _ : state) benchmark::DoNotOptimize(free_space_decision(p, q, eps).first);
  state.SetComplexityN(n);
}
BENCHMARK(bm_free_space_decision)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void bm_continuous_frechet(benchmark::State& state) {
  const int n = int(state.range(0));
  const Polyline p = sized_polyline(1, n), q = sized_polyline(2, n);
  for (auto _ : state) benchmark::DoNotOptimize(continuous_frechet(p, q).value());
  state.SetComplexityN(n);
}
BENCHMARK(bm_continuous_frechet)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void bm_common_reparameterize(benchmark::State& state) {
  const int n = int(state.range(0));
  const Polyline p = sized_polyline(1, n), q = sized_polyline(2, n);
  for (auto _ : state) benchmark::DoNotOptimize(common_reparameterize(p, q).realized_sup);
}
BENCHMARK(bm_common_reparameterize)->RangeMultiplier(2)->Range(16, 128);

void bm_linear_morph(benchmark::State& state) {
  const Polyline p = sized_polyline(1, 24), q = sized_polyline(2, 24);
  const std::size_t frames = std::size_t(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(linear_morph(p, q, frames).frames.size());
}
BENCHMARK(bm_linear_morph)->RangeMultiplier(2)->Range(8, 64);

void bm_classify_path(benchmark::State& state) {
  const Polyline p = sized_polyline(3, int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify_path(p).class_label);
}
BENCHMARK(bm_classify_path)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();
