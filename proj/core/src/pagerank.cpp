#include "nbpr/pagerank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nbpr {
namespace {

double l1_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

void normalize_nonnegative(std::vector<double>& x) {
  for (auto& v : x) v = std::max(v, 0.0);
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  for (auto& v : x) v /= total;
}

void reject_isolated(const Graph& g) {
  for (NodeId x = 0; x < g.node_count(); ++x) {
    if (g.degree(x) == 0) throw std::invalid_argument("node " + std::to_string(x) + " is isolated");
  }
}

// Solves x = eps * (M x + dangling(x) u) + (1 - eps) u for a column-stochastic
// M. `step(x, y)` writes M x into y and returns the mass M dropped.
template <typename Step>
PageRankVector solve_fixed_point(std::span<const double> u, double epsilon, SolverMethod method, double tol,
                                 std::size_t max_iter, Step&& step) {
  const std::size_t dim = u.size();
  PageRankVector out;
  out.converged = false;
  std::vector<double> x(u.begin(), u.end());
  std::vector<double> y(dim);

  if (method == SolverMethod::Power) {
    for (std::size_t it = 1; it <= max_iter; ++it) {
      const double lost = step(std::span<const double>(x), std::span<double>(y));
      const double reinject = epsilon * lost + (1.0 - epsilon);
      for (std::size_t i = 0; i < dim; ++i) y[i] = epsilon * y[i] + reinject * u[i];
      out.residual = l1_distance(x, y);
      out.iterations = it;
      x.swap(y);
      if (out.residual < tol) {
        out.converged = true;
        break;
      }
    }
  } else {
    std::vector<double> term(dim);
    for (std::size_t i = 0; i < dim; ++i) term[i] = (1.0 - epsilon) * u[i];
    x = term;
    for (std::size_t it = 1; it <= max_iter; ++it) {
      const double lost = step(std::span<const double>(term), std::span<double>(y));
      for (std::size_t i = 0; i < dim; ++i) {
        term[i] = epsilon * (y[i] + lost * u[i]);
        x[i] += term[i];
      }
      out.residual = l1_norm(term);
      out.iterations = it;
      if (out.residual < tol) {
        out.converged = true;
        break;
      }
    }
  }
  normalize_nonnegative(x);
  out.values = std::move(x);
  return out;
}

std::vector<double> teleport_or_uniform(const PageRankConfig& cfg, std::size_t n) {
  return cfg.teleport.empty() ? uniform_distribution(n) : cfg.teleport;
}

MuPageRank infinite_mu(const EdgeLift& lift, double epsilon, std::span<const double> u) {
  // (I - eps tau)^{-1} (1 - eps) u = (u + eps tau u) / (1 + eps)
  std::vector<double> edge(u.size());
  for (std::size_t e = 0; e < u.size(); ++e) {
    edge[e] = (u[e] + epsilon * u[EdgeLift::reverse(static_cast<EdgeId>(e))]) / (1.0 + epsilon);
  }
  MuPageRank out;
  out.nodes.values = project_to_nodes(lift, edge);
  out.nodes.space = VectorSpace::Node;
  out.edges.values = std::move(edge);
  out.edges.space = VectorSpace::Edge;
  return out;
}

}  // namespace

std::vector<double> uniform_distribution(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

void validate(const PageRankConfig& cfg, std::size_t n) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (std::isnan(cfg.mu) || cfg.mu < 0.0) throw std::invalid_argument("mu must be non-negative");
  if (cfg.max_iter == 0) throw std::invalid_argument("max_iter must be positive");
  if (cfg.teleport.empty()) return;
  if (cfg.teleport.size() != n) throw std::invalid_argument("teleportation vector has the wrong length");
  double total = 0.0;
  for (double x : cfg.teleport) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("teleportation vector has a negative entry");
    total += x;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument("teleportation vector is not normalized");
  }
}

PageRankVector standard_pagerank(const Graph& g, const PageRankConfig& cfg) {
  validate(cfg, g.node_count());
  reject_isolated(g);
  const auto v = teleport_or_uniform(cfg, g.node_count());
  std::vector<double> inv_degree(g.node_count());
  for (NodeId x = 0; x < g.node_count(); ++x) inv_degree[x] = 1.0 / static_cast<double>(g.degree(x));

  auto step = [&](std::span<const double> x, std::span<double> y) {
    for (NodeId i = 0; i < g.node_count(); ++i) {
      double s = 0.0;
      for (NodeId j : g.neighbors(i)) s += x[j] * inv_degree[j];
      y[i] = s;
    }
    return 0.0;
  };
  auto result = solve_fixed_point(v, cfg.epsilon, cfg.method, cfg.tol, cfg.max_iter, step);
  result.space = VectorSpace::Node;
  return result;
}

MuPageRank mu_pagerank(const Graph& g, const PageRankConfig& cfg) {
  validate(cfg, g.node_count());
  reject_isolated(g);
  return mu_pagerank(g, build_lift(g), cfg);
}

MuPageRank mu_pagerank(const Graph& g, const EdgeLift& lift, const PageRankConfig& cfg) {
  validate(cfg, g.node_count());
  reject_isolated(g);
  if (lift.node_count() != g.node_count() || lift.edge_count() != 2 * g.edge_count()) {
    throw std::invalid_argument("lift does not belong to this graph");
  }
  const auto v = teleport_or_uniform(cfg, g.node_count());
  const auto u = lift_distribution(lift, v, cfg.mode);
  if (std::isinf(cfg.mu)) return infinite_mu(lift, cfg.epsilon, u);

  auto step = [&](std::span<const double> x, std::span<double> y) { return apply_transition(lift, cfg.mu, x, y); };
  MuPageRank out;
  out.edges = solve_fixed_point(u, cfg.epsilon, cfg.method, cfg.tol, cfg.max_iter, step);
  out.edges.space = VectorSpace::Edge;
  out.nodes.values = project_to_nodes(lift, out.edges.values);
  out.nodes.space = VectorSpace::Node;
  out.nodes.residual = out.edges.residual;
  out.nodes.iterations = out.edges.iterations;
  out.nodes.converged = out.edges.converged;
  return out;
}

PageRankVector infinity_pagerank(const Graph& g, double epsilon, std::span<const double> v) {
  PageRankConfig cfg;
  cfg.epsilon = epsilon;
  cfg.teleport.assign(v.begin(), v.end());
  validate(cfg, g.node_count());
  reject_isolated(g);

  const double self = 1.0 / (1.0 + epsilon);
  const double spread = epsilon / (1.0 + epsilon);
  PageRankVector out;
  out.values.resize(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) {
    double s = 0.0;
    for (NodeId j : g.neighbors(i)) s += v[j] / static_cast<double>(g.degree(j));
    out.values[i] = self * v[i] + spread * s;
  }
  return out;
}

std::vector<double> biregular_closed_form(std::size_t n1, std::size_t n2, std::size_t d1, std::size_t d2,
                                          double epsilon) {
  if (n1 == 0 || n2 == 0 || d1 == 0 || d2 == 0) throw std::invalid_argument("biregular: sizes and degrees must be positive");
  if (n1 * d1 != n2 * d2) throw std::invalid_argument("biregular: n1*d1 must equal n2*d2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  const double n = static_cast<double>(n1 + n2);
  const double ratio = static_cast<double>(d1) / static_cast<double>(d2);
  const double scale = 1.0 / (n * (1.0 + epsilon));
  std::vector<double> out(n1, (1.0 + epsilon * ratio) * scale);
  out.insert(out.end(), n2, (1.0 + epsilon / ratio) * scale);
  return out;
}

}  // namespace nbpr
