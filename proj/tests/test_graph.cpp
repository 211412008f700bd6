#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "nbpr/generators.hpp"
#include "nbpr/graph.hpp"
#include "support/random_graphs.hpp"

namespace nbpr {
namespace {

TEST(Graph, BuildsSortedCsr) {
  const std::vector<EdgePair> pairs{{2, 0}, {0, 1}, {1, 2}, {1, 0}, {3, 2}};
  const Graph g = build_graph(pairs, 4);
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.edge_count(), 4u);
  const std::vector<EdgePair> expected{{0, 1}, {0, 2}, {1, 2}, {2, 3}};
  EXPECT_TRUE(std::equal(g.edges().begin(), g.edges().end(), expected.begin(), expected.end()));
  const auto nb = g.neighbors(2);
  EXPECT_EQ(std::vector<NodeId>(nb.begin(), nb.end()), (std::vector<NodeId>{0, 1, 3}));
  EXPECT_EQ(g.degree(3), 1u);
  EXPECT_TRUE(g.connected());
  EXPECT_TRUE(g.has_edge(3, 2));
  EXPECT_FALSE(g.has_edge(0, 3));
  EXPECT_EQ(g.min_degree(), 1u);
  EXPECT_EQ(g.max_degree(), 3u);
}

TEST(Graph, RejectsBadInput) {
  const std::vector<EdgePair> loop{{1, 1}};
  EXPECT_THROW(build_graph(loop, 3), std::invalid_argument);
  const std::vector<EdgePair> out_of_range{{0, 3}};
  EXPECT_THROW(build_graph(out_of_range, 3), std::invalid_argument);
  EXPECT_THROW(build_graph({}, 0), std::invalid_argument);
}

TEST(Graph, IsolatedNodeAndComponents) {
  const std::vector<EdgePair> pairs{{0, 1}, {3, 4}, {4, 5}};
  const Graph g = build_graph(pairs, 7);
  EXPECT_FALSE(g.connected());
  EXPECT_TRUE(g.has_isolated_node());
  const auto labels = component_labels(g);
  EXPECT_EQ(labels, (std::vector<std::size_t>{0, 0, 1, 2, 2, 2, 3}));
  EXPECT_EQ(largest_component(g), (std::vector<NodeId>{3, 4, 5}));
  const Graph sub = induced_subgraph(g, {5, 3, 4});
  EXPECT_EQ(sub.node_count(), 3u);
  EXPECT_EQ(sub.edge_count(), 2u);
  EXPECT_TRUE(sub.connected());
}

TEST(Graph, ComparesByEdgeSet) {
  const std::vector<EdgePair> a{{0, 1}, {1, 2}};
  const std::vector<EdgePair> b{{2, 1}, {1, 0}, {0, 1}};
  EXPECT_EQ(build_graph(a, 3), build_graph(b, 3));
  EXPECT_FALSE(build_graph(a, 3) == build_graph(a, 4));
}

TEST(Generators, SbmBlocksAndExtremes) {
  GeneratorSpec spec{SbmParams{{3, 3}, 1.0, 0.0}, 5};
  const auto out = generate(spec);
  EXPECT_EQ(out.graph.edge_count(), 6u);
  EXPECT_EQ(out.labels, (std::vector<int>{0, 0, 0, 1, 1, 1}));
  EXPECT_FALSE(out.graph.connected());
  EXPECT_FALSE(out.graph.has_edge(2, 3));

  GeneratorSpec full{SbmParams{{4, 5}, 1.0, 1.0}, 5};
  EXPECT_EQ(generate(full).graph.edge_count(), 36u);
}

TEST(Generators, RegularHasExactDegrees) {
  GeneratorSpec spec{RegularParams{20, 3}, 7};
  const auto g = generate(spec).graph;
  EXPECT_EQ(g.edge_count(), 30u);
  for (NodeId x = 0; x < 20; ++x) EXPECT_EQ(g.degree(x), 3u);
}

TEST(Generators, BiregularHasExactDegrees) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorSpec spec{BiregularParams{6, 9, 3, 2}, seed};
    const auto out = generate(spec);
    for (NodeId x = 0; x < 6; ++x) {
      EXPECT_EQ(out.graph.degree(x), 3u);
      EXPECT_EQ(out.labels[x], 0);
      for (NodeId y : out.graph.neighbors(x)) EXPECT_GE(y, 6u);
    }
    for (NodeId x = 6; x < 15; ++x) {
      EXPECT_EQ(out.graph.degree(x), 2u);
      EXPECT_EQ(out.labels[x], 1);
    }
  }
}

TEST(Generators, CompleteBipartiteIsForced) {
  GeneratorSpec spec{BiregularParams{2, 3, 3, 2}, 1};
  EXPECT_EQ(generate(spec).graph, testing::complete_bipartite(2, 3));
}

TEST(Generators, RejectsInfeasibleSpecs) {
  EXPECT_THROW(validate(GeneratorSpec{RegularParams{5, 3}, 0}), std::invalid_argument);
  EXPECT_THROW(validate(GeneratorSpec{RegularParams{4, 4}, 0}), std::invalid_argument);
  EXPECT_THROW(validate(GeneratorSpec{BiregularParams{4, 6, 3, 3}, 0}), std::invalid_argument);
  EXPECT_THROW(validate(GeneratorSpec{BiregularParams{3, 2, 2, 2}, 0}), std::invalid_argument);
  EXPECT_THROW(validate(GeneratorSpec{GnpParams{10, 1.5}, 0}), std::invalid_argument);
  EXPECT_THROW(validate(GeneratorSpec{SbmParams{{3, 0}, 0.5, 0.1}, 0}), std::invalid_argument);
  EXPECT_THROW(validate(GeneratorSpec{ParetoChungLuParams{10, 2.0, 2.0}, 0}), std::invalid_argument);
  EXPECT_THROW(generate(GeneratorSpec{RegularParams{5, 3}, 0}), std::invalid_argument);
}

TEST(Generators, SameSeedSameGraph) {
  const std::vector<GeneratorSpec> specs{
      {SbmParams{{10, 10, 10}, 0.5, 0.1}, 3}, {RegularParams{30, 4}, 3}, {BiregularParams{8, 12, 3, 2}, 3},
      {GnpParams{50, 0.1}, 3},                {ParetoChungLuParams{200, 2.5, 2.0}, 3}};
  for (const auto& spec : specs) {
    EXPECT_EQ(generate(spec).graph, generate(spec).graph) << model_name(spec.model);
    GeneratorSpec other = spec;
    other.seed = 4;
    EXPECT_FALSE(generate(spec).graph == generate(other).graph) << model_name(spec.model);
  }
}

TEST(Generators, RandomSpecsGiveSimpleSymmetricGraphs) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    GeneratorSpec spec;
    spec.seed = rng();
    const auto n = 4 + static_cast<std::size_t>(uniform_index(rng, 30));
    switch (i % 5) {
      case 0: spec.model = SbmParams{{n / 2, n - n / 2}, uniform01(rng), uniform01(rng)}; break;
      case 1: spec.model = RegularParams{n % 2 ? n + 1 : n, 3}; break;
      case 2: spec.model = BiregularParams{n, 2 * n, 4, 2}; break;
      case 3: spec.model = GnpParams{n, uniform01(rng)}; break;
      default: spec.model = ParetoChungLuParams{n, 2.1 + uniform01(rng), 1.0 + uniform01(rng)}; break;
    }
    const auto g = generate(spec).graph;
    std::size_t degree_sum = 0;
    for (NodeId x = 0; x < g.node_count(); ++x) {
      degree_sum += g.degree(x);
      for (NodeId y : g.neighbors(x)) {
        ASSERT_NE(x, y);
        ASSERT_TRUE(g.has_edge(y, x));
      }
    }
    ASSERT_EQ(degree_sum, 2 * g.edge_count());
  }
}

TEST(Generators, ParetoHasHeavierTailThanGnp) {
  GeneratorSpec pareto{ParetoChungLuParams{2000, 2.5, 2.0}, 9};
  const auto g = generate(pareto).graph;
  const double mean = 2.0 * static_cast<double>(g.edge_count()) / 2000.0;
  GeneratorSpec gnp{GnpParams{2000, mean / 1999.0}, 9};
  const auto h = generate(gnp).graph;
  EXPECT_GT(g.max_degree(), 2 * h.max_degree());
}

}  // namespace
}  // namespace nbpr
