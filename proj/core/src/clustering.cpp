#include "nbpr/clustering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "nbpr/pagerank.hpp"
#include "nbpr/random.hpp"

namespace nbpr {
namespace {

std::vector<std::size_t> dense_ids(std::span<const int> labels, std::size_t& count) {
  std::map<int, std::size_t> ids;
  for (int l : labels) ids.emplace(l, 0);
  std::size_t next = 0;
  for (auto& [label, id] : ids) id = next++;
  count = next;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
  return out;
}

// Minimum-cost perfect assignment on a square matrix (Kuhn-Munkres with
// potentials). Returns row_of[col].
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_of(n);
  for (std::size_t j = 1; j <= n; ++j) row_of[j - 1] = p[j] - 1;
  return row_of;
}

double scaled_sq_distance(std::span<const double> a, std::span<const double> b, std::span<const double> inv_degree) {
  double s = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    const double d = a[x] - b[x];
    s += d * d * inv_degree[x];
  }
  return s;
}

}  // namespace

PersonalizedBasis personalized_basis(const Graph& g, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  const std::size_t n = g.node_count();
  for (NodeId x = 0; x < n; ++x) {
    if (g.degree(x) == 0) throw std::invalid_argument("node " + std::to_string(x) + " is isolated");
  }
  // Row x = (1+eps)^{-1} e_x + eps (1+eps)^{-1} A D^{-1} e_x.
  std::vector<double> rho(n * n, 0.0);
  const double self = 1.0 / (1.0 + epsilon);
  for (NodeId x = 0; x < n; ++x) {
    const double spread = epsilon / ((1.0 + epsilon) * static_cast<double>(g.degree(x)));
    rho[x * n + x] = self;
    for (NodeId y : g.neighbors(x)) rho[x * n + y] = spread;
  }
  return PersonalizedBasis(n, std::move(rho));
}

double pr_distance(std::span<const double> a, std::span<const double> b, std::span<const std::size_t> degrees) {
  if (a.size() != b.size() || a.size() != degrees.size()) throw std::invalid_argument("pr_distance: length mismatch");
  double s = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (degrees[x] == 0) throw std::invalid_argument("pr_distance: zero degree");
    const double d = a[x] - b[x];
    s += d * d / static_cast<double>(degrees[x]);
  }
  return std::sqrt(s);
}

ClusterModel cluster(const PersonalizedBasis& basis, std::span<const std::size_t> degrees, std::size_t k, double tol,
                     std::uint64_t seed, std::size_t max_iter) {
  const std::size_t n = basis.size();
  if (k == 0 || k > n) throw std::invalid_argument("cluster: k must lie in [1, n]");
  if (degrees.size() != n) throw std::invalid_argument("cluster: degree vector has the wrong length");
  std::vector<double> inv_degree(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (degrees[x] == 0) throw std::invalid_argument("cluster: zero degree");
    inv_degree[x] = 1.0 / static_cast<double>(degrees[x]);
  }

  ClusterModel model;
  model.k = k;
  model.seed = seed;
  model.labels.assign(n, 0);

  Rng rng(seed);
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_index(rng, n - i));
    std::swap(pool[i], pool[j]);
  }
  model.centers.resize(k * n);
  for (std::size_t i = 0; i < k; ++i) {
    auto r = basis.row(pool[i]);
    std::copy(r.begin(), r.end(), model.centers.begin() + static_cast<std::ptrdiff_t>(i * n));
  }

  std::vector<double> next(k * n);
  std::vector<double> nearest(n);
  std::vector<std::size_t> members(k);
  double error = std::numeric_limits<double>::infinity();

  while (!(error < tol) && model.iterations < max_iter) {
    for (std::size_t x = 0; x < n; ++x) {
      double best = std::numeric_limits<double>::infinity();
      int label = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const double d = scaled_sq_distance(basis.row(x), model.center(i, n), inv_degree);
        if (d < best) {
          best = d;
          label = static_cast<int>(i);
        }
      }
      model.labels[x] = label;
      nearest[x] = best;
    }

    std::fill(members.begin(), members.end(), 0);
    for (int l : model.labels) ++members[static_cast<std::size_t>(l)];
    for (std::size_t i = 0; i < k; ++i) {
      if (members[i] != 0) continue;
      // Move the node farthest from its center (outside singleton clusters) here.
      std::size_t far = n;
      for (std::size_t x = 0; x < n; ++x) {
        if (members[static_cast<std::size_t>(model.labels[x])] < 2) continue;
        if (far == n || nearest[x] > nearest[far]) far = x;
      }
      if (far == n) break;
      --members[static_cast<std::size_t>(model.labels[far])];
      model.labels[far] = static_cast<int>(i);
      members[i] = 1;
      nearest[far] = 0.0;
      ++model.reseeds;
    }

    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t x = 0; x < n; ++x) {
      const auto l = static_cast<std::size_t>(model.labels[x]);
      auto r = basis.row(x);
      for (std::size_t y = 0; y < n; ++y) next[l * n + y] += r[y];
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (members[i] == 0) {
        std::copy_n(model.centers.begin() + static_cast<std::ptrdiff_t>(i * n), n,
                    next.begin() + static_cast<std::ptrdiff_t>(i * n));
        continue;
      }
      const double inv = 1.0 / static_cast<double>(members[i]);
      for (std::size_t y = 0; y < n; ++y) next[i * n + y] *= inv;
    }

    double sq = 0.0;
    for (std::size_t j = 0; j < next.size(); ++j) {
      const double d = model.centers[j] - next[j];
      sq += d * d;
    }
    error = std::sqrt(sq);
    model.centers.swap(next);
    ++model.iterations;
  }

  model.final_error = error;
  model.converged = error < tol;
  model.within_distance = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    model.within_distance += std::sqrt(
        scaled_sq_distance(basis.row(x), model.center(static_cast<std::size_t>(model.labels[x]), n), inv_degree));
  }
  return model;
}

ClusterModel cluster(const Graph& g, std::size_t k, double epsilon, double tol, std::uint64_t seed,
                     std::size_t max_iter) {
  const auto basis = personalized_basis(g, epsilon);
  return cluster(basis, g.degrees(), k, tol, seed, max_iter);
}

ClusterModel cluster_best(const Graph& g, const ClusterOptions& opts) {
  if (opts.restarts == 0) throw std::invalid_argument("cluster: restarts must be positive");
  if (opts.k == 0 || opts.k > g.node_count()) throw std::invalid_argument("cluster: k must lie in [1, n]");
  const auto basis = personalized_basis(g, opts.epsilon);
  std::vector<ClusterModel> runs(opts.restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < opts.restarts; r = next++) {
      runs[r] = cluster(basis, g.degrees(), opts.k, opts.tol, derive_seed(opts.seed, r), opts.max_iter);
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(opts.threads, 1, opts.restarts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].within_distance < runs[best].within_distance) best = r;
  }
  return std::move(runs[best]);
}

double nmi(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw std::invalid_argument("nmi: length mismatch");
  if (a.empty()) return 1.0;
  std::size_t ka = 0, kb = 0;
  const auto ia = dense_ids(a, ka);
  const auto ib = dense_ids(b, kb);
  // Integer counts keep a constant labeling at exactly zero entropy.
  std::vector<std::size_t> joint(ka * kb, 0), ca(ka, 0), cb(kb, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++joint[ia[i] * kb + ib[i]];
    ++ca[ia[i]];
    ++cb[ib[i]];
  }
  const double total = static_cast<double>(a.size());
  auto entropy = [total](const std::vector<std::size_t>& c) {
    double h = 0.0;
    for (std::size_t x : c) {
      if (x > 0) h -= static_cast<double>(x) / total * std::log(static_cast<double>(x) / total);
    }
    return h;
  };
  const double ha = entropy(ca), hb = entropy(cb);
  if (ka == 1 && kb == 1) return 1.0;
  if (ka == 1 || kb == 1) return 0.0;
  double mi = 0.0;
  for (std::size_t i = 0; i < ka; ++i) {
    for (std::size_t j = 0; j < kb; ++j) {
      const auto c = static_cast<double>(joint[i * kb + j]);
      if (c > 0) mi += c / total * std::log(c * total / (static_cast<double>(ca[i]) * static_cast<double>(cb[j])));
    }
  }
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

double best_match_accuracy(std::span<const int> labels, std::span<const int> truth) {
  if (labels.size() != truth.size()) throw std::invalid_argument("best_match_accuracy: length mismatch");
  if (labels.empty()) return 1.0;
  std::size_t ka = 0, kb = 0;
  const auto ia = dense_ids(labels, ka);
  const auto ib = dense_ids(truth, kb);
  const std::size_t s = std::max(ka, kb);
  std::vector<std::vector<double>> cost(s, std::vector<double>(s, 0.0));
  for (std::size_t i = 0; i < labels.size(); ++i) cost[ia[i]][ib[i]] -= 1.0;
  const auto row_of = hungarian(cost);
  double agree = 0.0;
  for (std::size_t j = 0; j < s; ++j) agree -= cost[row_of[j]][j];
  return agree / static_cast<double>(labels.size());
}

}  // namespace nbpr
