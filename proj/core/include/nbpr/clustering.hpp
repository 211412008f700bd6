#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nbpr/graph.hpp"

namespace nbpr {

/// Row-major n x n matrix whose row x is the infinity PageRank personalized on
/// node x. Row x is supported on the closed neighborhood of x.
class PersonalizedBasis {
 public:
  PersonalizedBasis(std::size_t n, std::vector<double> rho) : n_(n), rho_(std::move(rho)) {}

  std::size_t size() const noexcept { return n_; }
  std::span<const double> row(std::size_t x) const noexcept { return {rho_.data() + x * n_, n_}; }

 private:
  std::size_t n_;
  std::vector<double> rho_;
};

/// Builds every personalized row in O(n + m) total work beyond the dense
/// storage. Throws std::invalid_argument for isolated nodes or epsilon outside (0,1).
PersonalizedBasis personalized_basis(const Graph& g, double epsilon);

/// Euclidean distance between a D^{-1/2} and b D^{-1/2}.
/// Throws std::invalid_argument on length mismatch or a zero degree.
double pr_distance(std::span<const double> a, std::span<const double> b, std::span<const std::size_t> degrees);

struct ClusterModel {
  std::size_t k = 0;
  /// Row-major k x n matrix of centers.
  std::vector<double> centers;
  std::vector<int> labels;
  std::size_t iterations = 0;
  /// Frobenius norm of the last center update.
  double final_error = 0.0;
  bool converged = false;
  /// Number of empty clusters re-seeded from the farthest node.
  std::size_t reseeds = 0;
  /// Sum over nodes of the distance to their assigned center.
  double within_distance = 0.0;
  std::uint64_t seed = 0;

  std::span<const double> center(std::size_t i, std::size_t n) const noexcept {
    return {centers.data() + i * n, n};
  }
};

struct ClusterOptions {
  std::size_t k = 2;
  double epsilon = 0.85;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t max_iter = 1000;
  std::size_t restarts = 1;
  std::size_t threads = 1;
};

/// One run of the infinity-PageRank k-means loop: seed k centers with the
/// rows of k distinct random nodes, then alternate nearest-center assignment
/// (ties to the lowest index) and averaging until the Frobenius change of the
/// centers drops below tol or max_iter passes. Throws std::invalid_argument
/// unless 1 <= k <= n.
ClusterModel cluster(const Graph& g, std::size_t k, double epsilon, double tol, std::uint64_t seed,
                     std::size_t max_iter);

/// Same on a precomputed basis.
ClusterModel cluster(const PersonalizedBasis& basis, std::span<const std::size_t> degrees, std::size_t k, double tol,
                     std::uint64_t seed, std::size_t max_iter);

/// Best of opts.restarts runs by within_distance; restart r uses seed
/// derive_seed(opts.seed, r). Ties go to the lower restart index.
ClusterModel cluster_best(const Graph& g, const ClusterOptions& opts);

/// Mutual information normalized by the arithmetic mean of the two entropies.
/// Two constant labelings score 1. Throws std::invalid_argument on length mismatch.
double nmi(std::span<const int> a, std::span<const int> b);

/// Largest fraction of agreeing nodes over one-to-one matchings of predicted
/// to true labels (Hungarian assignment). Throws std::invalid_argument on
/// length mismatch.
double best_match_accuracy(std::span<const int> labels, std::span<const int> truth);

}  // namespace nbpr
