#include "nbpr/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nbpr {

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (u >= node_count() || v >= node_count()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::min_degree() const noexcept {
  if (degrees_.empty()) return 0;
  return *std::min_element(degrees_.begin(), degrees_.end());
}

std::size_t Graph::max_degree() const noexcept {
  if (degrees_.empty()) return 0;
  return *std::max_element(degrees_.begin(), degrees_.end());
}

Graph build_graph(std::span<const EdgePair> pairs, std::size_t n) {
  if (n == 0) throw std::invalid_argument("graph must have at least one node");

  std::vector<EdgePair> edges;
  edges.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [u, v] = pairs[i];
    if (u >= n || v >= n) {
      throw std::invalid_argument("edge " + std::to_string(i) + " (" + std::to_string(u) + "," +
                                  std::to_string(v) + ") has an index outside [0," +
                                  std::to_string(n) + ")");
    }
    if (u == v) {
      throw std::invalid_argument("self-loop at node " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.degrees_.assign(n, 0);
  for (auto [u, v] : edges) {
    ++g.degrees_[u];
    ++g.degrees_[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) g.offsets_[x + 1] = g.offsets_[x] + g.degrees_[x];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : edges) g.adjacency_[fill[u]++] = v;
  for (auto [u, v] : edges) g.adjacency_[fill[v]++] = u;
  for (std::size_t x = 0; x < n; ++x) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[x]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[x + 1]));
  }
  g.edges_ = std::move(edges);

  // Connectivity by iterative traversal from node 0.
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (NodeId y : g.neighbors(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  g.connected_ = reached == n;
  return g;
}

std::vector<std::size_t> component_labels(const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, unset);
  std::size_t next = 0;
  std::vector<NodeId> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(static_cast<NodeId>(s));
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y : g.neighbors(x)) {
        if (label[y] == unset) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return label;
}

Graph induced_subgraph(const Graph& g, std::vector<NodeId> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  constexpr auto absent = static_cast<NodeId>(-1);
  std::vector<NodeId> index(g.node_count(), absent);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= g.node_count()) throw std::invalid_argument("induced_subgraph: node out of range");
    index[keep[i]] = static_cast<NodeId>(i);
  }
  std::vector<EdgePair> pairs;
  for (auto [u, v] : g.edges()) {
    if (index[u] != absent && index[v] != absent) pairs.emplace_back(index[u], index[v]);
  }
  return build_graph(pairs, keep.size());
}

std::vector<NodeId> largest_component(const Graph& g) {
  auto label = component_labels(g);
  std::vector<std::size_t> size;
  for (auto l : label) {
    if (l >= size.size()) size.resize(l + 1, 0);
    ++size[l];
  }
  const auto best = static_cast<std::size_t>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<NodeId> nodes;
  nodes.reserve(size[best]);
  for (std::size_t x = 0; x < label.size(); ++x) {
    if (label[x] == best) nodes.push_back(static_cast<NodeId>(x));
  }
  return nodes;
}

}  // namespace nbpr
