#include "nbpr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "nbpr/edge_lift.hpp"
#include "nbpr/pagerank.hpp"
#include "nbpr/random.hpp"

namespace nbpr {

std::string to_string(Trend t) {
  switch (t) {
    case Trend::Constant: return "constant";
    case Trend::Increasing: return "increasing";
    case Trend::Decreasing: return "decreasing";
    case Trend::NonMonotone: return "non-monotone";
  }
  return "unknown";
}

Trend classify_trend(std::span<const double> series, double tol) {
  bool up = false, down = false;
  for (std::size_t k = 1; k < series.size(); ++k) {
    const double d = series[k] - series[k - 1];
    if (d > tol) up = true;
    if (d < -tol) down = true;
  }
  if (up && down) return Trend::NonMonotone;
  if (up) return Trend::Increasing;
  if (down) return Trend::Decreasing;
  return Trend::Constant;
}

bool SweepResult::complete() const {
  return std::none_of(failed.begin(), failed.end(), [](bool f) { return f; });
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  grid.back() = hi;
  return grid;
}

std::vector<double> default_mu_grid() { return linear_grid(0.0, 100.0, 20); }

SweepResult mu_sweep(const Graph& g, double epsilon, std::span<const double> grid, double tol_mono,
                     double solver_tol) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0)) throw std::invalid_argument("mu grid must be non-negative");
    if (k > 0 && !(grid[k] > grid[k - 1])) throw std::invalid_argument("mu grid must be strictly increasing");
  }

  SweepResult out;
  out.mu_grid.assign(grid.begin(), grid.end());
  out.values.resize(grid.size());
  out.failed.assign(grid.size(), false);
  out.range_widths.assign(grid.size(), 0.0);

  const EdgeLift lift = build_lift(g);
  PageRankConfig cfg;
  cfg.epsilon = epsilon;
  cfg.tol = solver_tol;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    cfg.mu = grid[k];
    try {
      auto result = mu_pagerank(g, lift, cfg);
      if (!result.nodes.converged) {
        out.failed[k] = true;
        continue;
      }
      out.values[k] = std::move(result.nodes.values);
      auto [lo, hi] = std::minmax_element(out.values[k].begin(), out.values[k].end());
      out.range_widths[k] = *hi - *lo;
    } catch (const std::exception&) {
      out.failed[k] = true;
    }
  }

  std::vector<double> series;
  out.verdicts.resize(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) {
    series.clear();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (!out.failed[k]) series.push_back(out.values[k][i]);
    }
    out.verdicts[i] = classify_trend(series, tol_mono);
  }
  series.clear();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!out.failed[k]) series.push_back(out.range_widths[k]);
  }
  out.range_trend = classify_trend(series, tol_mono);
  return out;
}

std::vector<NodeId> rank_order(std::span<const double> values) {
  std::vector<NodeId> order(values.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return values[a] > values[b]; });
  return order;
}

std::size_t top_count(std::size_t n, double percent) {
  // The small slack keeps exact products such as 10 * 1000 / 100 from rounding up.
  const double raw = percent * static_cast<double>(n) / 100.0;
  const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::clamp<std::size_t>(k, 1, n);
}

double topk_overlap(std::span<const double> a, std::span<const double> b, double percent) {
  if (a.size() != b.size()) throw std::invalid_argument("topk_overlap: length mismatch");
  if (!(percent > 0.0 && percent <= 100.0)) throw std::invalid_argument("topk_overlap: percent must lie in (0,100]");
  if (a.empty()) return 1.0;
  const std::size_t k = top_count(a.size(), percent);
  auto ra = rank_order(a);
  auto rb = rank_order(b);
  std::vector<char> in_b(a.size(), 0);
  for (std::size_t i = 0; i < k; ++i) in_b[rb[i]] = 1;
  std::size_t common = 0;
  for (std::size_t i = 0; i < k; ++i) common += in_b[ra[i]];
  return static_cast<double>(common) / static_cast<double>(k);
}

namespace {

OverlapTrial run_overlap_trial(const GeneratorSpec& spec, std::size_t t, std::span<const double> percents,
                               double epsilon) {
  OverlapTrial trial;
  trial.index = t;
  try {
    GeneratorSpec draw = spec;
    draw.seed = derive_seed(spec.seed, t);
    auto generated = generate(draw);
    Graph g = generated.graph.connected() ? std::move(generated.graph)
                                          : induced_subgraph(generated.graph, largest_component(generated.graph));
    if (g.edge_count() == 0) throw std::runtime_error("generated graph has no edges");
    trial.nodes = g.node_count();
    PageRankConfig cfg;
    cfg.epsilon = epsilon;
    const auto standard = standard_pagerank(g, cfg);
    if (!standard.converged) throw std::runtime_error("standard PageRank did not converge");
    const auto limit = infinity_pagerank(g, epsilon, uniform_distribution(g.node_count()));
    for (double p : percents) trial.overlaps.push_back(topk_overlap(standard.values, limit.values, p));
  } catch (const std::exception& e) {
    trial.skipped = true;
    trial.error = e.what();
    trial.overlaps.clear();
  }
  return trial;
}

}  // namespace

OverlapReport overlap_experiment(const GeneratorSpec& spec, std::size_t trials, std::span<const double> percents,
                                 double epsilon, std::size_t threads) {
  if (trials == 0) throw std::invalid_argument("overlap_experiment: trials must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  for (double p : percents) {
    if (!(p > 0.0 && p <= 100.0)) throw std::invalid_argument("percent levels must lie in (0,100]");
  }
  validate(spec);

  OverlapReport report;
  report.spec = spec;
  report.trials = trials;
  report.epsilon = epsilon;
  report.percents.assign(percents.begin(), percents.end());
  report.per_trial.resize(trials);

  threads = std::clamp<std::size_t>(threads, 1, trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      report.per_trial[t] = run_overlap_trial(spec, t, percents, epsilon);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  report.mean_overlap.assign(percents.size(), 0.0);
  std::size_t used = 0;
  for (const auto& trial : report.per_trial) {
    if (trial.skipped) continue;
    ++used;
    for (std::size_t j = 0; j < percents.size(); ++j) report.mean_overlap[j] += trial.overlaps[j];
  }
  for (auto& m : report.mean_overlap) m = used ? m / static_cast<double>(used) : 0.0;
  return report;
}

std::vector<double> monte_carlo_walk(const Graph& g, double epsilon, double mu, std::size_t steps,
                                     std::uint64_t seed) {
  if (steps == 0) throw std::invalid_argument("monte_carlo_walk: steps must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  if (std::isnan(mu) || mu < 0.0) throw std::invalid_argument("mu must be non-negative");
  if (g.has_isolated_node()) throw std::invalid_argument("monte_carlo_walk: graph has an isolated node");

  const EdgeLift lift = build_lift(g);
  const auto u = lift_distribution(lift, uniform_distribution(g.node_count()), LiftMode::TailDegree);
  std::vector<double> cumulative(u.size());
  std::partial_sum(u.begin(), u.end(), cumulative.begin());

  Rng rng(seed);
  auto teleport = [&]() -> EdgeId {
    const double r = uniform01(rng) * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    if (it == cumulative.end()) --it;
    return static_cast<EdgeId>(it - cumulative.begin());
  };

  std::vector<std::uint64_t> visits(g.node_count(), 0);
  EdgeId state = teleport();
  for (std::size_t s = 0; s < steps; ++s) {
    if (uniform01(rng) >= epsilon || is_dangling(lift, mu, state)) {
      state = teleport();
    } else {
      const EdgeId back = EdgeLift::reverse(state);
      const auto out = lift.out_edges(lift.head(state));
      const double others = static_cast<double>(out.size()) - 1.0;
      const bool backtrack = std::isinf(mu) || uniform01(rng) * (others + mu) < mu;
      if (backtrack) {
        state = back;
      } else {
        // Uniform choice among the out-edges other than the backtrack edge.
        auto pick = static_cast<std::size_t>(uniform_index(rng, out.size() - 1));
        const auto back_pos = static_cast<std::size_t>(std::find(out.begin(), out.end(), back) - out.begin());
        if (pick >= back_pos) ++pick;
        state = out[pick];
      }
    }
    ++visits[lift.tail(state)];
  }

  std::vector<double> freq(g.node_count());
  for (std::size_t x = 0; x < freq.size(); ++x) freq[x] = static_cast<double>(visits[x]) / static_cast<double>(steps);
  return freq;
}

}  // namespace nbpr
