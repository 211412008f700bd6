#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nbpr/graph.hpp"
#include "nbpr/random.hpp"

namespace nbpr::testing {

/// Random spanning tree plus independent extra edges with probability p.
inline Graph random_connected(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<EdgePair> edges;
  for (std::size_t x = 1; x < n; ++x) {
    edges.emplace_back(static_cast<NodeId>(uniform_index(rng, x)), static_cast<NodeId>(x));
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (uniform01(rng) < p) edges.emplace_back(static_cast<NodeId>(x), static_cast<NodeId>(y));
    }
  }
  return build_graph(edges, n);
}

/// Connected graph with minimum degree at least 2: a random cycle through all
/// nodes plus extra edges.
inline Graph random_min_degree_two(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<NodeId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeId>(i);
  shuffle(std::span<NodeId>(order), rng);
  std::vector<EdgePair> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(order[i], order[(i + 1) % n]);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (uniform01(rng) < p) edges.emplace_back(static_cast<NodeId>(x), static_cast<NodeId>(y));
    }
  }
  return build_graph(edges, n);
}

inline Graph path(std::size_t n) {
  std::vector<EdgePair> edges;
  for (std::size_t x = 0; x + 1 < n; ++x) edges.emplace_back(static_cast<NodeId>(x), static_cast<NodeId>(x + 1));
  return build_graph(edges, n);
}

inline Graph cycle(std::size_t n) {
  std::vector<EdgePair> edges;
  for (std::size_t x = 0; x < n; ++x) edges.emplace_back(static_cast<NodeId>(x), static_cast<NodeId>((x + 1) % n));
  return build_graph(edges, n);
}

inline Graph complete(std::size_t n) {
  std::vector<EdgePair> edges;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) edges.emplace_back(static_cast<NodeId>(x), static_cast<NodeId>(y));
  }
  return build_graph(edges, n);
}

/// K_{a,b} with part 1 = [0, a).
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<EdgePair> edges;
  for (std::size_t x = 0; x < a; ++x) {
    for (std::size_t y = 0; y < b; ++y) edges.emplace_back(static_cast<NodeId>(x), static_cast<NodeId>(a + y));
  }
  return build_graph(edges, a + b);
}

}  // namespace nbpr::testing
