#include <benchmark/benchmark.h>

#include "nbpr/edge_lift.hpp"
#include "nbpr/generators.hpp"
#include "nbpr/pagerank.hpp"

namespace {

nbpr::Graph sparse_graph(std::size_t n) {
  const auto g = nbpr::generate({nbpr::GnpParams{n, 8.0 / static_cast<double>(n - 1)}, 1}).graph;
  return nbpr::induced_subgraph(g, nbpr::largest_component(g));
}

void BM_StandardPageRank(benchmark::State& state) {
  const auto g = sparse_graph(static_cast<std::size_t>(state.range(0)));
  nbpr::PageRankConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(nbpr::standard_pagerank(g, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_StandardPageRank)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_MuPageRank(benchmark::State& state) {
  const auto g = sparse_graph(static_cast<std::size_t>(state.range(0)));
  const nbpr::EdgeLift lift(g);
  nbpr::PageRankConfig cfg;
  cfg.mu = static_cast<double>(state.range(1)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(nbpr::mu_pagerank(g, lift, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lift.edge_count()));
}
BENCHMARK(BM_MuPageRank)
    ->ArgsProduct({{1000, 10000, 100000}, {0, 5, 100}})
    ->ArgNames({"n", "mu_x10"})
    ->Unit(benchmark::kMillisecond);

void BM_MuPageRankSeries(benchmark::State& state) {
  const auto g = sparse_graph(static_cast<std::size_t>(state.range(0)));
  const nbpr::EdgeLift lift(g);
  nbpr::PageRankConfig cfg;
  cfg.mu = 0.5;
  cfg.method = nbpr::SolverMethod::LinearSeries;
  for (auto _ : state) benchmark::DoNotOptimize(nbpr::mu_pagerank(g, lift, cfg));
}
BENCHMARK(BM_MuPageRankSeries)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EdgeLift(benchmark::State& state) {
  const auto g = sparse_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nbpr::EdgeLift(g));
}
BENCHMARK(BM_EdgeLift)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_InfinityPageRank(benchmark::State& state) {
  const auto g = sparse_graph(static_cast<std::size_t>(state.range(0)));
  const auto v = nbpr::uniform_distribution(g.node_count());
  for (auto _ : state) benchmark::DoNotOptimize(nbpr::infinity_pagerank(g, 0.85, v));
}
BENCHMARK(BM_InfinityPageRank)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMicrosecond);

}  // namespace
