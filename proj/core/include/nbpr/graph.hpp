#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace nbpr {

using NodeId = std::uint32_t;
using EdgePair = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph.
///
/// Neighbor lists are stored in compressed sparse row form and sorted in
/// ascending order. Undirected edges are kept once each as (u, v) with u < v,
/// sorted lexicographically; that order defines the edge rank used by the
/// directed-edge lift.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return degrees_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId x) const noexcept {
    return {adjacency_.data() + offsets_[x], adjacency_.data() + offsets_[x + 1]};
  }
  std::size_t degree(NodeId x) const noexcept { return degrees_[x]; }
  std::span<const std::size_t> degrees() const noexcept { return degrees_; }
  std::span<const EdgePair> edges() const noexcept { return edges_; }
  std::span<const std::size_t> offsets() const noexcept { return offsets_; }

  bool connected() const noexcept { return connected_; }
  bool has_edge(NodeId u, NodeId v) const noexcept;
  std::size_t min_degree() const noexcept;
  std::size_t max_degree() const noexcept;
  bool has_isolated_node() const noexcept { return node_count() > 0 && min_degree() == 0; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.degrees_.size() == b.degrees_.size() && a.edges_ == b.edges_;
  }

 private:
  friend Graph build_graph(std::span<const EdgePair> pairs, std::size_t n);

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<std::size_t> degrees_;
  std::vector<EdgePair> edges_;
  bool connected_ = false;
};

/// Builds a simple graph on nodes [0, n) from pairs in either orientation.
/// Duplicate and reversed pairs collapse to one edge. Throws
/// std::invalid_argument on self-loops, out-of-range indices or n == 0.
Graph build_graph(std::span<const EdgePair> pairs, std::size_t n);

/// Connected components labelled 0.. in order of their smallest node.
std::vector<std::size_t> component_labels(const Graph& g);

/// Subgraph induced by `keep` (need not be sorted). Node i of the result is
/// keep[i] of the input after sorting.
Graph induced_subgraph(const Graph& g, std::vector<NodeId> keep);

/// Nodes of the largest connected component, ascending. Ties go to the
/// component containing the smallest node.
std::vector<NodeId> largest_component(const Graph& g);

}  // namespace nbpr
