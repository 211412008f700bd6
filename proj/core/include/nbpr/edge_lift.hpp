#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nbpr/graph.hpp"

namespace nbpr {

using EdgeId = std::uint32_t;

/// How a node distribution is carried onto directed edges.
enum class LiftMode {
  /// u[e] = v[tail(e)] / deg(tail(e)); mass of a node split over its out-edges.
  TailDegree,
  /// u[e] proportional to v[head(e)]; every edge pointing into a node copies its weight.
  HeadCopy,
};

/// The directed-edge lift of an undirected graph.
///
/// Undirected edge of rank t, (u, v) with u < v, becomes directed edge 2t
/// (u -> v) and its reverse 2t+1 (v -> u), so reverse(e) == e ^ 1.
/// Edges leaving and entering each node are indexed in CSR form.
///
/// All operators act on edge-indexed column vectors; the transition is
/// column-stochastic (mass at an edge is pushed to its successors).
class EdgeLift {
 public:
  explicit EdgeLift(const Graph& g);

  std::size_t edge_count() const noexcept { return tail_.size(); }
  std::size_t node_count() const noexcept { return out_offsets_.size() - 1; }

  NodeId tail(EdgeId e) const noexcept { return tail_[e]; }
  NodeId head(EdgeId e) const noexcept { return head_[e]; }
  static constexpr EdgeId reverse(EdgeId e) noexcept { return e ^ 1U; }
  double head_degree(EdgeId e) const noexcept { return head_degree_[e]; }
  std::size_t node_degree(NodeId x) const noexcept { return out_offsets_[x + 1] - out_offsets_[x]; }

  std::span<const NodeId> tails() const noexcept { return tail_; }
  std::span<const NodeId> heads() const noexcept { return head_; }
  std::span<const double> head_degrees() const noexcept { return head_degree_; }

  /// Directed edges with tail x.
  std::span<const EdgeId> out_edges(NodeId x) const noexcept {
    return {out_.data() + out_offsets_[x], out_.data() + out_offsets_[x + 1]};
  }
  /// Directed edges with head x.
  std::span<const EdgeId> in_edges(NodeId x) const noexcept {
    return {in_.data() + out_offsets_[x], in_.data() + out_offsets_[x + 1]};
  }

 private:
  std::vector<NodeId> tail_;
  std::vector<NodeId> head_;
  std::vector<double> head_degree_;
  std::vector<std::size_t> out_offsets_;  // shared by in_ (in-degree == out-degree)
  std::vector<EdgeId> out_;
  std::vector<EdgeId> in_;
};

/// Builds the lift; throws std::invalid_argument for a graph without edges.
EdgeLift build_lift(const Graph& g);

/// True when the walk sitting on `e` has no admissible successor: mu == 0 and
/// head(e) has degree one.
bool is_dangling(const EdgeLift& lift, double mu, EdgeId e) noexcept;

/// Probability of stepping from edge e to edge f (zero unless head(e) == tail(f)).
/// Backtracking to reverse(e) is weighted by mu, every other successor by 1,
/// normalized by deg(head(e)) - 1 + mu. mu may be +infinity (always backtrack).
/// Dangling edges have no successors.
double transition_weight(const EdgeLift& lift, double mu, EdgeId e, EdgeId f);

/// y = M_mu x, where M_mu[f][e] = transition_weight(e, f). Returns the mass of
/// x sitting on dangling edges, which M_mu drops. Throws std::invalid_argument
/// for negative or NaN mu or mismatched sizes.
double apply_transition(const EdgeLift& lift, double mu, std::span<const double> x, std::span<double> y);

std::vector<double> apply_transition(const EdgeLift& lift, double mu, std::span<const double> x);

/// Carries a node distribution onto the edges. Throws std::invalid_argument if v
/// is negative or not normalized, or if the result would be empty.
std::vector<double> lift_distribution(const EdgeLift& lift, std::span<const double> v, LiftMode mode);

/// out[x] = sum of y over edges with tail x.
std::vector<double> project_to_nodes(const EdgeLift& lift, std::span<const double> y);

/// Tolerance used when checking that a distribution sums to one.
inline constexpr double kNormalizationTolerance = 1e-9;

}  // namespace nbpr
