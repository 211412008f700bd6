#include <benchmark/benchmark.h>

#include "nbpr/clustering.hpp"
#include "nbpr/generators.hpp"

namespace {

nbpr::Graph planted(std::size_t block) {
  const auto g = nbpr::generate({nbpr::SbmParams{{block, block, block}, 0.3, 0.02}, 3}).graph;
  return nbpr::induced_subgraph(g, nbpr::largest_component(g));
}

void BM_PersonalizedBasis(benchmark::State& state) {
  const auto g = planted(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nbpr::personalized_basis(g, 0.85));
}
BENCHMARK(BM_PersonalizedBasis)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_ClusterBest(benchmark::State& state) {
  const auto g = planted(static_cast<std::size_t>(state.range(0)));
  nbpr::ClusterOptions opts;
  opts.k = 3;
  opts.restarts = 8;
  opts.threads = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(nbpr::cluster_best(g, opts));
}
BENCHMARK(BM_ClusterBest)->ArgsProduct({{100, 300}, {1, 4}})->ArgNames({"block", "threads"})->Unit(benchmark::kMillisecond);

}  // namespace
