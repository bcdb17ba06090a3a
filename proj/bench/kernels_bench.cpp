// Serial reference against the OpenMP kernels on random point clouds.

#include "proxpair/kernels.hpp"
#include "proxpair/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace proxpair;

Points cloud(std::uint64_t seed, int dim, Eigen::Index count) {
  Rng rng(seed);
  Points P(dim, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    for (int r = 0; r < dim; ++r) P(r, j) = rng.uniform(-1.0, 1.0);
  }
  return P;
}

NormSpec norm_for(int code, int dim) {
  switch (code) {
    case 0: return NormSpec::lp(2.0, dim);
    case 1: return NormSpec::lp(1.0, dim);
    case 2: return NormSpec::linf(dim);
    default: return NormSpec::lp(3.0, dim);
  }
}

template <kernels::Exec E>
void BM_FarthestPair(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const NormSpec norm = norm_for(static_cast<int>(state.range(1)), 4);
  const Points P = cloud(1, 4, n);
  const Points Q = cloud(2, 4, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::farthest_pair(P, Q, norm, E));
  state.SetItemsProcessed(state.iterations() * n * n);
}

template <kernels::Exec E>
void BM_NearestPair(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const NormSpec norm = norm_for(static_cast<int>(state.range(1)), 4);
  const Points P = cloud(3, 4, n);
  const Points Q = cloud(4, 4, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::nearest_pair(P, Q, norm, E));
  state.SetItemsProcessed(state.iterations() * n * n);
}

void args(benchmark::internal::Benchmark* b) {
  for (long n : {256, 1024, 4096}) {
    for (long norm : {0, 1, 2, 3}) b->Args({n, norm});
  }
  b->ArgNames({"n", "norm"});
}

}  // namespace

BENCHMARK(BM_FarthestPair<kernels::Exec::serial>)->Apply(args)->Name("farthest_pair/serial");
BENCHMARK(BM_FarthestPair<kernels::Exec::parallel>)->Apply(args)->Name("farthest_pair/parallel")->UseRealTime();
BENCHMARK(BM_NearestPair<kernels::Exec::serial>)->Apply(args)->Name("nearest_pair/serial");
BENCHMARK(BM_NearestPair<kernels::Exec::parallel>)->Apply(args)->Name("nearest_pair/parallel")->UseRealTime();

BENCHMARK_MAIN();
