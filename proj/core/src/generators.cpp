#include "nbpr/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "nbpr/random.hpp"

namespace nbpr {
namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Stub matching with local rejection: draw a random stub from each pool and
// accept the pair unless it would create a loop or a repeated edge. When the
// remaining stubs admit no valid pair the attempt restarts from scratch.
std::vector<EdgePair> match_stubs(std::vector<NodeId> left, std::vector<NodeId> right, bool same_pool,
                                  Rng& rng) {
  const auto valid = [](NodeId u, NodeId v, const std::unordered_set<std::uint64_t>& used) {
    return u != v && !used.contains(pair_key(u, v));
  };

  for (std::size_t attempt = 0; attempt < kPairingAttempts; ++attempt) {
    std::vector<NodeId> a = left;
    std::vector<NodeId> b = right;
    std::unordered_set<std::uint64_t> used;
    std::vector<EdgePair> edges;
    bool stuck = false;

    while (!a.empty()) {
      bool placed = false;
      const std::size_t budget = 64 + 4 * a.size();
      for (std::size_t t = 0; t < budget && !placed; ++t) {
        std::size_t i, j;
        NodeId u, v;
        if (same_pool) {
          if (a.size() < 2) break;
          i = uniform_index(rng, a.size());
          j = uniform_index(rng, a.size() - 1);
          if (j >= i) ++j;
          u = a[i];
          v = a[j];
        } else {
          i = uniform_index(rng, a.size());
          j = uniform_index(rng, b.size());
          u = a[i];
          v = b[j];
        }
        if (!valid(u, v, used)) continue;
        used.insert(pair_key(u, v));
        edges.emplace_back(u, v);
        if (same_pool) {
          const auto hi = std::max(i, j), lo = std::min(i, j);
          a[hi] = a.back();
          a.pop_back();
          a[lo] = a.back();
          a.pop_back();
        } else {
          a[i] = a.back();
          a.pop_back();
          b[j] = b.back();
          b.pop_back();
        }
        placed = true;
      }
      if (placed) continue;

      // Random probing failed; look for any admissible pair before giving up.
      bool exists = false;
      const auto& other = same_pool ? a : b;
      for (std::size_t i = 0; i < a.size() && !exists; ++i) {
        for (std::size_t j = same_pool ? i + 1 : 0; j < other.size() && !exists; ++j) {
          exists = valid(a[i], other[j], used);
        }
      }
      if (!exists) {
        stuck = true;
        break;
      }
    }
    if (!stuck) return edges;
  }
  throw std::runtime_error("stub matching failed after " + std::to_string(kPairingAttempts) + " attempts");
}

GeneratedGraph generate_sbm(const SbmParams& p, Rng& rng) {
  const std::size_t n = std::accumulate(p.sizes.begin(), p.sizes.end(), std::size_t{0});
  std::vector<int> labels;
  labels.reserve(n);
  for (std::size_t b = 0; b < p.sizes.size(); ++b) labels.insert(labels.end(), p.sizes[b], static_cast<int>(b));
  std::vector<EdgePair> pairs;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double prob = labels[u] == labels[v] ? p.p_in : p.p_out;
      if (uniform01(rng) < prob) pairs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }
  return {build_graph(pairs, n), std::move(labels)};
}

GeneratedGraph generate_regular(const RegularParams& p, Rng& rng) {
  std::vector<NodeId> stubs;
  stubs.reserve(p.n * p.k);
  for (std::size_t x = 0; x < p.n; ++x) stubs.insert(stubs.end(), p.k, static_cast<NodeId>(x));
  auto pairs = match_stubs(std::move(stubs), {}, true, rng);
  return {build_graph(pairs, p.n), {}};
}

GeneratedGraph generate_biregular(const BiregularParams& p, Rng& rng) {
  std::vector<NodeId> left, right;
  for (std::size_t x = 0; x < p.n1; ++x) left.insert(left.end(), p.d1, static_cast<NodeId>(x));
  for (std::size_t x = 0; x < p.n2; ++x) right.insert(right.end(), p.d2, static_cast<NodeId>(p.n1 + x));
  auto pairs = match_stubs(std::move(left), std::move(right), false, rng);
  std::vector<int> labels(p.n1, 0);
  labels.insert(labels.end(), p.n2, 1);
  return {build_graph(pairs, p.n1 + p.n2), std::move(labels)};
}

GeneratedGraph generate_gnp(const GnpParams& p, Rng& rng) {
  std::vector<EdgePair> pairs;
  for (std::size_t u = 0; u < p.n; ++u) {
    for (std::size_t v = u + 1; v < p.n; ++v) {
      if (uniform01(rng) < p.p) pairs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }
  return {build_graph(pairs, p.n), {}};
}

GeneratedGraph generate_pareto(const ParetoChungLuParams& p, Rng& rng) {
  std::vector<double> w(p.n);
  const double shape = p.exponent - 1.0;
  for (auto& wi : w) wi = p.min_weight * std::pow(1.0 - uniform01(rng), -1.0 / shape);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<EdgePair> pairs;
  for (std::size_t u = 0; u < p.n; ++u) {
    for (std::size_t v = u + 1; v < p.n; ++v) {
      const double prob = std::min(1.0, w[u] * w[v] / total);
      if (uniform01(rng) < prob) pairs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }
  return {build_graph(pairs, p.n), {}};
}

struct Validator {
  void operator()(const SbmParams& p) const {
    if (p.sizes.empty()) throw std::invalid_argument("sbm needs at least one block");
    for (auto s : p.sizes) {
      if (s == 0) throw std::invalid_argument("sbm block of size zero");
    }
    check_probability(p.p_in, "p_in");
    check_probability(p.p_out, "p_out");
  }
  void operator()(const RegularParams& p) const {
    if (p.n == 0) throw std::invalid_argument("regular: n must be positive");
    if ((p.n * p.k) % 2 != 0) throw std::invalid_argument("regular: n*k must be even");
    if (p.k >= p.n) throw std::invalid_argument("regular: k must be below n");
  }
  void operator()(const BiregularParams& p) const {
    if (p.n1 == 0 || p.n2 == 0) throw std::invalid_argument("biregular: both parts must be non-empty");
    if (p.n1 * p.d1 != p.n2 * p.d2) throw std::invalid_argument("biregular: n1*d1 must equal n2*d2");
    if (p.d1 > p.n2 || p.d2 > p.n1) throw std::invalid_argument("biregular: degree exceeds opposite part size");
  }
  void operator()(const GnpParams& p) const {
    if (p.n == 0) throw std::invalid_argument("gnp: n must be positive");
    check_probability(p.p, "p");
  }
  void operator()(const ParetoChungLuParams& p) const {
    if (p.n == 0) throw std::invalid_argument("pareto-cl: n must be positive");
    if (!(p.exponent > 2.0)) throw std::invalid_argument("pareto-cl: exponent must exceed 2");
    if (!(p.min_weight > 0.0)) throw std::invalid_argument("pareto-cl: min_weight must be positive");
  }
};

}  // namespace

void validate(const GeneratorSpec& spec) { std::visit(Validator{}, spec.model); }

GeneratedGraph generate(const GeneratorSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  return std::visit(
      [&](const auto& p) -> GeneratedGraph {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SbmParams>) return generate_sbm(p, rng);
        else if constexpr (std::is_same_v<T, RegularParams>) return generate_regular(p, rng);
        else if constexpr (std::is_same_v<T, BiregularParams>) return generate_biregular(p, rng);
        else if constexpr (std::is_same_v<T, GnpParams>) return generate_gnp(p, rng);
        else return generate_pareto(p, rng);
      },
      spec.model);
}

std::string model_name(const ModelParams& model) {
  static constexpr const char* names[] = {"sbm", "regular", "biregular", "gnp", "pareto-cl"};
  return names[model.index()];
}

}  // namespace nbpr
