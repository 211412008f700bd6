#pragma once

// Dense reference assemblies for small graphs. Everything here is built from
// the graph's edge list and the definitions, never from the library's solvers.

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <vector>

#include "nbpr/edge_lift.hpp"
#include "nbpr/graph.hpp"

namespace nbpr::oracle {

using IntMatrix = Eigen::MatrixXi;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline IntMatrix adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  IntMatrix a = IntMatrix::Zero(n, n);
  for (auto [u, v] : g.edges()) {
    a(u, v) = 1;
    a(v, u) = 1;
  }
  return a;
}

inline IntMatrix degree_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  IntMatrix d = IntMatrix::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) d(x, x) = static_cast<int>(g.degree(static_cast<NodeId>(x)));
  return d;
}

/// T (n x 2m): T[x, e] = 1 when e leaves x.
inline IntMatrix tail_matrix(const EdgeLift& lift) {
  IntMatrix t = IntMatrix::Zero(static_cast<Eigen::Index>(lift.node_count()),
                                static_cast<Eigen::Index>(lift.edge_count()));
  for (EdgeId e = 0; e < lift.edge_count(); ++e) t(lift.tail(e), e) = 1;
  return t;
}

/// S (2m x n): S[e, y] = 1 when e enters y.
inline IntMatrix head_matrix(const EdgeLift& lift) {
  IntMatrix s = IntMatrix::Zero(static_cast<Eigen::Index>(lift.edge_count()),
                                static_cast<Eigen::Index>(lift.node_count()));
  for (EdgeId e = 0; e < lift.edge_count(); ++e) s(e, lift.head(e)) = 1;
  return s;
}

/// tau (2m x 2m): the reversal permutation, found by searching for (j, i).
inline IntMatrix reversal_matrix(const EdgeLift& lift) {
  const auto m2 = static_cast<Eigen::Index>(lift.edge_count());
  IntMatrix tau = IntMatrix::Zero(m2, m2);
  for (EdgeId e = 0; e < lift.edge_count(); ++e) {
    for (EdgeId f = 0; f < lift.edge_count(); ++f) {
      if (lift.tail(f) == lift.head(e) && lift.head(f) == lift.tail(e)) tau(e, f) = 1;
    }
  }
  return tau;
}

inline IntMatrix head_degree_matrix(const EdgeLift& lift, const Graph& g) {
  const auto m2 = static_cast<Eigen::Index>(lift.edge_count());
  IntMatrix d = IntMatrix::Zero(m2, m2);
  for (EdgeId e = 0; e < lift.edge_count(); ++e) d(e, e) = static_cast<int>(g.degree(lift.head(e)));
  return d;
}

/// Column-stochastic edge walk with backtrack weight mu, from the definition:
/// column e spreads over edges f leaving head(e), weight mu on the reversal.
/// Dangling columns are left zero.
inline Matrix edge_walk(const EdgeLift& lift, const Graph& g, double mu) {
  const auto m2 = static_cast<Eigen::Index>(lift.edge_count());
  const IntMatrix c = (head_matrix(lift) * tail_matrix(lift)).transpose();
  const IntMatrix tau = reversal_matrix(lift);
  Matrix w = Matrix::Zero(m2, m2);
  for (Eigen::Index e = 0; e < m2; ++e) {
    const double denom = static_cast<double>(g.degree(lift.head(static_cast<EdgeId>(e)))) - 1.0 + mu;
    if (denom == 0.0) continue;
    for (Eigen::Index f = 0; f < m2; ++f) {
      w(f, e) = (static_cast<double>(c(f, e)) - (1.0 - mu) * static_cast<double>(tau(f, e))) / denom;
    }
  }
  return w;
}

inline Vector to_vector(std::span<const double> x) {
  Vector v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i)) = x[i];
  return v;
}

/// Solves (I - eps (W + u d^T)) p = (1 - eps) u by LU, d the dangling indicator.
inline Vector edge_pagerank(const Matrix& walk, const Vector& u, double eps) {
  const auto m2 = walk.rows();
  Matrix repaired = walk;
  for (Eigen::Index e = 0; e < m2; ++e) {
    if (walk.col(e).cwiseAbs().sum() == 0.0) repaired.col(e) = u;
  }
  const Matrix lhs = Matrix::Identity(m2, m2) - eps * repaired;
  Vector p = lhs.partialPivLu().solve((1.0 - eps) * u);
  return p / p.sum();
}

/// Tail-degree lift of v: u[e] = v[tail] / d_tail.
inline Vector tail_degree_lift(const EdgeLift& lift, const Graph& g, const Vector& v) {
  Vector u(static_cast<Eigen::Index>(lift.edge_count()));
  for (EdgeId e = 0; e < lift.edge_count(); ++e) {
    u(e) = v(lift.tail(e)) / static_cast<double>(g.degree(lift.tail(e)));
  }
  return u;
}

/// mu-PageRank node vector by dense solve.
inline Vector mu_pagerank(const Graph& g, double eps, double mu, const Vector& v) {
  const EdgeLift lift(g);
  const Vector u = tail_degree_lift(lift, g, v);
  const Vector p = edge_pagerank(edge_walk(lift, g, mu), u, eps);
  return tail_matrix(lift).cast<double>() * p;
}

/// Standard PageRank by dense solve of (I - eps A D^-1) pi = (1 - eps) v.
inline Vector standard_pagerank(const Graph& g, double eps, const Vector& v) {
  const Matrix a = adjacency(g).cast<double>();
  const auto n = a.rows();
  Matrix ad = a;
  for (Eigen::Index j = 0; j < n; ++j) ad.col(j) /= static_cast<double>(g.degree(static_cast<NodeId>(j)));
  const Matrix lhs = Matrix::Identity(n, n) - eps * ad;
  Vector p = lhs.partialPivLu().solve((1.0 - eps) * v);
  return p / p.sum();
}

inline Vector uniform(std::size_t n) {
  return Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
}

inline double max_gap(std::span<const double> a, const Vector& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] - b(static_cast<Eigen::Index>(i))));
  return gap;
}

}  // namespace nbpr::oracle
