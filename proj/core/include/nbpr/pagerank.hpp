#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "nbpr/edge_lift.hpp"
#include "nbpr/graph.hpp"

namespace nbpr {

enum class SolverMethod {
  /// x <- eps * M x + (1 - eps) u until successive iterates differ by < tol in l1.
  Power,
  /// sum_r eps^r M^r (1 - eps) u until the next term has l1 norm < tol.
  LinearSeries,
};

enum class VectorSpace { Node, Edge };

/// Backtracking weight selecting the infinite-mu limit.
inline constexpr double kInfiniteMu = std::numeric_limits<double>::infinity();

struct PageRankConfig {
  /// Probability of following the walk; 1 - epsilon is the teleportation probability.
  double epsilon = 0.85;
  /// Backtracking weight: 0 non-backtracking, 1 standard, kInfiniteMu the limit.
  double mu = 1.0;
  /// Node teleportation distribution; empty means uniform.
  std::vector<double> teleport;
  LiftMode mode = LiftMode::TailDegree;
  SolverMethod method = SolverMethod::Power;
  double tol = 1e-12;
  std::size_t max_iter = 100000;
};

struct PageRankVector {
  std::vector<double> values;
  VectorSpace space = VectorSpace::Node;
  /// Last successive-iterate difference (power) or last term norm (series).
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
};

struct MuPageRank {
  PageRankVector nodes;
  PageRankVector edges;
};

std::vector<double> uniform_distribution(std::size_t n);

/// Throws std::invalid_argument on epsilon outside (0,1), tol <= 0, negative
/// mu or a malformed teleportation vector for a graph with n nodes.
void validate(const PageRankConfig& cfg, std::size_t n);

/// Stationary vector of eps * A D^{-1} + (1 - eps) v 1^T.
/// Throws std::invalid_argument if the graph has an isolated node.
/// A run that hits max_iter returns converged == false with its residual.
PageRankVector standard_pagerank(const Graph& g, const PageRankConfig& cfg);

/// Edge-space stationary vector of the mu-weighted walk and its projection to
/// nodes. At mu == 0, mass on dangling edges is sent back through the
/// teleportation distribution. cfg.mu == kInfiniteMu uses the closed form.
MuPageRank mu_pagerank(const Graph& g, const PageRankConfig& cfg);

/// Same, reusing a prebuilt lift of g.
MuPageRank mu_pagerank(const Graph& g, const EdgeLift& lift, const PageRankConfig& cfg);

/// Limit of mu-PageRank as mu grows without bound, evaluated in O(n + m):
/// v_i / (1 + eps) + eps / (1 + eps) * sum_{j ~ i} v_j / d_j.
PageRankVector infinity_pagerank(const Graph& g, double epsilon, std::span<const double> v);

/// PageRank of any connected bipartite biregular graph with parts of sizes
/// n1, n2 and degrees d1, d2 under uniform teleportation. Entries [0, n1) are
/// part 1, [n1, n1 + n2) part 2. Throws std::invalid_argument unless
/// n1 * d1 == n2 * d2 with all values positive.
std::vector<double> biregular_closed_form(std::size_t n1, std::size_t n2, std::size_t d1, std::size_t d2,
                                          double epsilon);

}  // namespace nbpr
