#include <gtest/gtest.h>

#include <numeric>

#include "nbpr/clustering.hpp"
#include "nbpr/generators.hpp"
#include "nbpr/pagerank.hpp"
#include "support/random_graphs.hpp"

namespace nbpr {
namespace {

TEST(Basis, PathAndTriangleRows) {
  const auto p3 = personalized_basis(testing::path(3), 0.85);
  EXPECT_NEAR(p3.row(0)[0], 0.540540, 1e-6);
  EXPECT_NEAR(p3.row(0)[1], 0.459459, 1e-6);
  EXPECT_EQ(p3.row(0)[2], 0.0);
  const auto k3 = personalized_basis(testing::complete(3), 0.85);
  EXPECT_NEAR(k3.row(1)[1], 0.540541, 1e-6);
  EXPECT_NEAR(k3.row(1)[0], 0.229730, 1e-6);
  EXPECT_NEAR(k3.row(1)[2], 0.229730, 1e-6);
}

TEST(Basis, RowsMatchPersonalizedLimit) {
  const Graph g = testing::random_connected(15, 0.2, 6);
  const auto basis = personalized_basis(g, 0.7);
  for (NodeId x = 0; x < g.node_count(); ++x) {
    std::vector<double> e(g.node_count(), 0.0);
    e[x] = 1.0;
    const auto expected = infinity_pagerank(g, 0.7, e).values;
    const auto row = basis.row(x);
    EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-15);
    for (NodeId y = 0; y < g.node_count(); ++y) {
      EXPECT_NEAR(row[y], expected[y], 1e-15);
      if (y != x && !g.has_edge(x, y)) EXPECT_EQ(row[y], 0.0);
    }
  }
}

TEST(Basis, RowsDependOnlyOnClosedNeighborhood) {
  std::vector<EdgePair> base{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
  auto extended = base;
  extended.emplace_back(3, 5);
  const auto a = personalized_basis(build_graph(base, 6), 0.85);
  const auto b = personalized_basis(build_graph(extended, 6), 0.85);
  for (NodeId x : {0u, 1u}) {
    for (std::size_t y = 0; y < 6; ++y) EXPECT_EQ(a.row(x)[y], b.row(x)[y]);
  }
}

TEST(Basis, RejectsIsolatedNode) {
  const std::vector<EdgePair> pairs{{0, 1}};
  EXPECT_THROW(personalized_basis(build_graph(pairs, 3), 0.85), std::invalid_argument);
}

TEST(Distance, Examples) {
  const std::vector<std::size_t> deg(4, 4);
  const std::vector<double> e1{1, 0, 0, 0}, e2{0, 1, 0, 0};
  EXPECT_NEAR(pr_distance(e1, e2, deg), 0.707107, 1e-6);
  EXPECT_EQ(pr_distance(e1, e1, deg), 0.0);
  EXPECT_EQ(pr_distance(e1, e2, deg), pr_distance(e2, e1, deg));
  const std::vector<std::size_t> zero{1, 0, 1, 1};
  EXPECT_THROW(pr_distance(e1, e2, zero), std::invalid_argument);
  EXPECT_THROW(pr_distance(e1, std::vector<double>{1.0}, deg), std::invalid_argument);
}

TEST(Cluster, SeparatesDisjointTriangles) {
  GeneratorSpec spec{SbmParams{{3, 3}, 1.0, 0.0}, 0};
  const auto g = generate(spec);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto model = cluster(g.graph, 2, 0.85, 1e-10, seed, 100);
    EXPECT_TRUE(model.converged);
    EXPECT_EQ(best_match_accuracy(model.labels, g.labels), 1.0) << "seed " << seed;
  }
}

TEST(Cluster, KEqualsNGivesSingletons) {
  const Graph g = testing::random_connected(8, 0.3, 1);
  const auto model = cluster(g, 8, 0.85, 1e-10, 3, 100);
  std::vector<int> sorted = model.labels;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(model.final_error, 0.0);
  EXPECT_EQ(model.iterations, 1u);
}

TEST(Cluster, RejectsBadK) {
  const Graph g = testing::cycle(5);
  EXPECT_THROW(cluster(g, 0, 0.85, 1e-10, 0, 10), std::invalid_argument);
  EXPECT_THROW(cluster(g, 6, 0.85, 1e-10, 0, 10), std::invalid_argument);
}

TEST(Cluster, DeterministicAndAFixedPoint) {
  GeneratorSpec spec{SbmParams{{20, 20, 20}, 0.5, 0.05}, 4};
  const auto g = generate(spec).graph;
  const auto a = cluster(g, 3, 0.85, 1e-10, 8, 1000);
  const auto b = cluster(g, 3, 0.85, 1e-10, 8, 1000);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.centers, b.centers);
  ASSERT_TRUE(a.converged);
  EXPECT_LT(a.final_error, 1e-10);
  // One more assignment pass leaves every label unchanged.
  const auto basis = personalized_basis(g, 0.85);
  for (NodeId x = 0; x < g.node_count(); ++x) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 3; ++i) {
      const double d = pr_distance(basis.row(x), a.center(i, g.node_count()), g.degrees());
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    EXPECT_EQ(best, a.labels[x]);
  }
  for (int l : a.labels) {
    EXPECT_GE(l, 0);
    EXPECT_LT(l, 3);
  }
}

TEST(Cluster, CentersAreMemberAverages) {
  GeneratorSpec spec{SbmParams{{15, 15}, 0.6, 0.05}, 2};
  const auto g = generate(spec).graph;
  const auto model = cluster(g, 2, 0.85, 1e-10, 1, 1000);
  const auto basis = personalized_basis(g, 0.85);
  const std::size_t n = g.node_count();
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<double> mean(n, 0.0);
    std::size_t count = 0;
    for (NodeId x = 0; x < n; ++x) {
      if (model.labels[x] != static_cast<int>(i)) continue;
      ++count;
      for (std::size_t y = 0; y < n; ++y) mean[y] += basis.row(x)[y];
    }
    ASSERT_GT(count, 0u);
    for (std::size_t y = 0; y < n; ++y) EXPECT_NEAR(model.center(i, n)[y], mean[y] / count, 1e-12);
  }
}

TEST(Cluster, ReseedsEmptyClusters) {
  // Rows 0 and 1 coincide, so with k = n one of their centers starts empty.
  std::vector<double> rho{0.5, 0.5, 0.0, 0.0,  //
                          0.5, 0.5, 0.0, 0.0,  //
                          0.0, 0.2, 0.8, 0.0,  //
                          0.0, 0.0, 0.3, 0.7};
  const PersonalizedBasis basis(4, rho);
  const std::vector<std::size_t> degrees{1, 2, 2, 1};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto model = cluster(basis, degrees, 4, 1e-10, seed, 100);
    std::vector<int> sorted = model.labels;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<int>{0, 1, 2, 3}));
    EXPECT_GE(model.reseeds, 1u);
  }
}

TEST(Cluster, BestOfRestartsIsDeterministicAcrossThreads) {
  GeneratorSpec spec{SbmParams{{30, 30, 30}, 0.9, 0.1}, 7};
  const auto g = generate(spec);
  ClusterOptions opts;
  opts.k = 3;
  opts.restarts = 10;
  opts.seed = 5;
  const auto one = cluster_best(g.graph, opts);
  opts.threads = 4;
  const auto many = cluster_best(g.graph, opts);
  EXPECT_EQ(one.labels, many.labels);
  EXPECT_EQ(one.seed, many.seed);
  for (std::size_t r = 0; r < 10; ++r) {
    EXPECT_LE(one.within_distance, cluster(g.graph, 3, 0.85, 1e-10, derive_seed(5, r), 1000).within_distance);
  }
  EXPECT_GE(best_match_accuracy(one.labels, g.labels), 0.9);
}

TEST(Metrics, Nmi) {
  const std::vector<int> a{0, 0, 1, 1, 2, 2};
  const std::vector<int> permuted{2, 2, 0, 0, 1, 1};
  const std::vector<int> constant(6, 4);
  EXPECT_NEAR(nmi(a, a), 1.0, 1e-15);
  EXPECT_NEAR(nmi(a, permuted), 1.0, 1e-15);
  EXPECT_EQ(nmi(a, constant), 0.0);
  EXPECT_EQ(nmi(constant, constant), 1.0);
  EXPECT_THROW(nmi(a, std::vector<int>{0}), std::invalid_argument);
  // Two balanced halves against a split into a constant pair gives known MI.
  const std::vector<int> x{0, 0, 1, 1}, y{0, 1, 0, 1};
  EXPECT_NEAR(nmi(x, y), 0.0, 1e-15);
}

TEST(Metrics, NmiIsPermutationInvariant) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> a(40), b(40);
    for (auto& v : a) v = static_cast<int>(uniform_index(rng, 4));
    for (auto& v : b) v = static_cast<int>(uniform_index(rng, 5));
    std::vector<int> perm{3, 0, 4, 1, 2};
    std::vector<int> relabeled(40);
    for (std::size_t i = 0; i < 40; ++i) relabeled[i] = perm[static_cast<std::size_t>(b[i])];
    const double s = nmi(a, b);
    EXPECT_NEAR(s, nmi(a, relabeled), 1e-12);
    EXPECT_NEAR(s, nmi(b, a), 1e-12);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(Metrics, BestMatchAccuracy) {
  const std::vector<int> truth{0, 0, 1, 1, 2, 2};
  EXPECT_EQ(best_match_accuracy(truth, truth), 1.0);
  EXPECT_EQ(best_match_accuracy(std::vector<int>{5, 5, 3, 3, 9, 9}, truth), 1.0);
  EXPECT_NEAR(best_match_accuracy(std::vector<int>{0, 0, 0, 0, 0, 0}, truth), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(best_match_accuracy(std::vector<int>{0, 1, 2, 3, 4, 5}, truth), 0.5, 1e-15);

  std::vector<int> big(90), labels(90);
  for (int i = 0; i < 90; ++i) big[i] = labels[i] = i / 30;
  labels[5] = 2;
  EXPECT_NEAR(best_match_accuracy(labels, big), 0.9889, 1e-4);
  EXPECT_THROW(best_match_accuracy(labels, truth), std::invalid_argument);
}

TEST(Metrics, AccuracyMatchesBruteForce) {
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    std::vector<int> a(25), b(25);
    for (auto& v : a) v = static_cast<int>(uniform_index(rng, 4));
    for (auto& v : b) v = static_cast<int>(uniform_index(rng, 4));
    std::vector<int> perm{0, 1, 2, 3};
    std::size_t best = 0;
    do {
      std::size_t agree = 0;
      for (std::size_t i = 0; i < 25; ++i) agree += perm[static_cast<std::size_t>(a[i])] == b[i];
      best = std::max(best, agree);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_NEAR(best_match_accuracy(a, b), static_cast<double>(best) / 25.0, 1e-15);
  }
}

}  // namespace
}  // namespace nbpr
