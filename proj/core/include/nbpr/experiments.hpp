#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nbpr/generators.hpp"
#include "nbpr/graph.hpp"

namespace nbpr {

enum class Trend { Constant, Increasing, Decreasing, NonMonotone };

std::string to_string(Trend t);

/// Classifies a sequence by the signs of consecutive differences. Differences
/// within +-tol are compatible with either direction.
Trend classify_trend(std::span<const double> series, double tol);

struct SweepResult {
  std::vector<double> mu_grid;
  /// values[k] is the node mu-PageRank at mu_grid[k] (empty if that point failed).
  std::vector<std::vector<double>> values;
  std::vector<bool> failed;
  /// Per-node trend across the successful grid points.
  std::vector<Trend> verdicts;
  /// max_i - min_i of each row.
  std::vector<double> range_widths;
  /// Trend of range_widths across the grid.
  Trend range_trend = Trend::Constant;

  bool complete() const;
};

/// count values evenly spaced over [lo, hi], both ends included.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// Twenty evenly spaced values on [0, 100].
std::vector<double> default_mu_grid();

inline constexpr double kMonotoneTolerance = 1e-9;

/// mu-PageRank over a grid of backtracking weights with uniform teleportation.
/// Throws std::invalid_argument when the grid is not strictly increasing or
/// has negative entries.
SweepResult mu_sweep(const Graph& g, double epsilon, std::span<const double> grid,
                     double tol_mono = kMonotoneTolerance, double solver_tol = 1e-12);

/// Ranking order: value descending, node index ascending on ties.
std::vector<NodeId> rank_order(std::span<const double> values);

/// ceil(percent * n / 100), at least 1.
std::size_t top_count(std::size_t n, double percent);

/// Fraction of the top ceil(percent * n / 100) nodes of `a` that are also in
/// the top set of `b`. Throws std::invalid_argument on length mismatch or
/// percent outside (0, 100].
double topk_overlap(std::span<const double> a, std::span<const double> b, double percent);

struct OverlapTrial {
  std::size_t index = 0;
  bool skipped = false;
  std::string error;
  /// Size of the component both rankings were computed on.
  std::size_t nodes = 0;
  std::vector<double> overlaps;  // one per percent level
};

struct OverlapReport {
  GeneratorSpec spec;
  std::size_t trials = 0;
  double epsilon = 0.85;
  std::vector<double> percents;
  std::vector<double> mean_overlap;  // one per percent level, over non-skipped trials
  std::vector<OverlapTrial> per_trial;
};

inline const std::vector<double> kDefaultPercents{1.0, 5.0, 10.0, 20.0};
inline constexpr std::size_t kDefaultTrials = 100;

/// Repeats: draw a graph (trial t uses seed derive_seed(spec.seed, t)), keep
/// its largest connected component, compare the top sets of standard and
/// infinity PageRank under uniform teleportation. Trials run on up to
/// `threads` worker threads; results are ordered by trial index.
OverlapReport overlap_experiment(const GeneratorSpec& spec, std::size_t trials,
                                 std::span<const double> percents, double epsilon, std::size_t threads = 1);

/// Simulates the mu-weighted edge walk with teleportation for `steps` moves
/// and returns visit frequencies projected to tail nodes. mu may be
/// kInfiniteMu. Throws std::invalid_argument for steps == 0 or isolated nodes.
std::vector<double> monte_carlo_walk(const Graph& g, double epsilon, double mu, std::size_t steps,
                                     std::uint64_t seed);

}  // namespace nbpr
