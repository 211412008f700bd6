#include "nbpr/edge_lift.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nbpr {
namespace {

void check_mu(double mu) {
  if (std::isnan(mu) || mu < 0.0) throw std::invalid_argument("mu must be non-negative");
}

void check_distribution(std::span<const double> v, std::size_t n) {
  if (v.size() != n) {
    throw std::invalid_argument("distribution has " + std::to_string(v.size()) + " entries, expected " +
                                std::to_string(n));
  }
  double total = 0.0;
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("distribution has a negative or non-finite entry");
    total += x;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument("distribution is not normalized (sum " + std::to_string(total) + ")");
  }
}

}  // namespace

EdgeLift::EdgeLift(const Graph& g) {
  const std::size_t m = g.edge_count();
  if (m == 0) throw std::invalid_argument("cannot lift a graph without edges");

  tail_.resize(2 * m);
  head_.resize(2 * m);
  head_degree_.resize(2 * m);
  auto edges = g.edges();
  for (std::size_t t = 0; t < m; ++t) {
    auto [u, v] = edges[t];
    tail_[2 * t] = u;
    head_[2 * t] = v;
    tail_[2 * t + 1] = v;
    head_[2 * t + 1] = u;
  }
  for (std::size_t e = 0; e < 2 * m; ++e) head_degree_[e] = static_cast<double>(g.degree(head_[e]));

  out_offsets_.assign(g.offsets().begin(), g.offsets().end());
  out_.resize(2 * m);
  in_.resize(2 * m);
  std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill = out_fill;
  for (std::size_t e = 0; e < 2 * m; ++e) {
    out_[out_fill[tail_[e]]++] = static_cast<EdgeId>(e);
    in_[in_fill[head_[e]]++] = static_cast<EdgeId>(e);
  }
}

EdgeLift build_lift(const Graph& g) { return EdgeLift(g); }

bool is_dangling(const EdgeLift& lift, double mu, EdgeId e) noexcept {
  return mu == 0.0 && lift.head_degree(e) == 1.0;
}

double transition_weight(const EdgeLift& lift, double mu, EdgeId e, EdgeId f) {
  check_mu(mu);
  if (lift.head(e) != lift.tail(f) || is_dangling(lift, mu, e)) return 0.0;
  const bool backtrack = f == EdgeLift::reverse(e);
  if (std::isinf(mu)) return backtrack ? 1.0 : 0.0;
  const double denom = lift.head_degree(e) - 1.0 + mu;
  return backtrack ? mu / denom : 1.0 / denom;
}

double apply_transition(const EdgeLift& lift, double mu, std::span<const double> x, std::span<double> y) {
  check_mu(mu);
  if (x.size() != lift.edge_count() || y.size() != lift.edge_count()) {
    throw std::invalid_argument("apply_transition: vector size does not match the lift");
  }
  if (std::isinf(mu)) {
    for (std::size_t e = 0; e < x.size(); ++e) y[EdgeLift::reverse(static_cast<EdgeId>(e))] = x[e];
    return 0.0;
  }

  double dangling = 0.0;
  for (NodeId h = 0; h < lift.node_count(); ++h) {
    auto in = lift.in_edges(h);
    auto out = lift.out_edges(h);
    const double denom = static_cast<double>(in.size()) - 1.0 + mu;
    if (denom == 0.0) {
      // mu == 0 at a leaf: the only successor would be the reverse edge.
      for (EdgeId e : in) dangling += x[e];
      for (EdgeId f : out) y[f] = 0.0;
      continue;
    }
    // Every out-edge of h receives the full inflow share; the one reversing
    // an incoming edge is then reweighted from 1 to mu.
    double inflow = 0.0;
    for (EdgeId e : in) inflow += x[e];
    for (EdgeId f : out) {
      y[f] = (inflow + (mu - 1.0) * x[EdgeLift::reverse(f)]) / denom;
    }
  }
  return dangling;
}

std::vector<double> apply_transition(const EdgeLift& lift, double mu, std::span<const double> x) {
  std::vector<double> y(lift.edge_count());
  apply_transition(lift, mu, x, y);
  return y;
}

std::vector<double> lift_distribution(const EdgeLift& lift, std::span<const double> v, LiftMode mode) {
  check_distribution(v, lift.node_count());
  std::vector<double> u(lift.edge_count(), 0.0);
  if (mode == LiftMode::TailDegree) {
    double carried = 0.0;
    for (std::size_t e = 0; e < u.size(); ++e) {
      const NodeId x = lift.tail(static_cast<EdgeId>(e));
      u[e] = v[x] / static_cast<double>(lift.node_degree(x));
    }
    for (NodeId x = 0; x < lift.node_count(); ++x) {
      if (lift.node_degree(x) > 0) carried += v[x];
    }
    if (std::abs(carried - 1.0) > kNormalizationTolerance) {
      throw std::invalid_argument("tail-degree lift: distribution puts mass on isolated nodes");
    }
    return u;
  }

  double total = 0.0;
  for (std::size_t e = 0; e < u.size(); ++e) {
    u[e] = v[lift.head(static_cast<EdgeId>(e))];
    total += u[e];
  }
  if (!(total > 0.0)) throw std::invalid_argument("head-copy lift: distribution is supported on isolated nodes");
  for (NodeId x = 0; x < lift.node_count(); ++x) {
    if (v[x] > 0.0 && lift.node_degree(x) == 0) {
      throw std::invalid_argument("head-copy lift: node " + std::to_string(x) + " has mass but no edges");
    }
  }
  for (auto& ue : u) ue /= total;
  return u;
}

std::vector<double> project_to_nodes(const EdgeLift& lift, std::span<const double> y) {
  if (y.size() != lift.edge_count()) throw std::invalid_argument("project_to_nodes: size mismatch");
  std::vector<double> out(lift.node_count(), 0.0);
  for (std::size_t e = 0; e < y.size(); ++e) out[lift.tail(static_cast<EdgeId>(e))] += y[e];
  return out;
}

}  // namespace nbpr
