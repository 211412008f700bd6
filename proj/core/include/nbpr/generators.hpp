#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "nbpr/graph.hpp"

namespace nbpr {

/// Stochastic block model: independent edges with probability p_in inside a
/// block and p_out across blocks.
struct SbmParams {
  std::vector<std::size_t> sizes;
  double p_in = 0.0;
  double p_out = 0.0;
};

/// Uniform-ish random k-regular graph (pairing model with rejection).
struct RegularParams {
  std::size_t n = 0;
  std::size_t k = 0;
};

/// Bipartite graph where part 1 (nodes [0,n1)) has degree d1 and part 2
/// (nodes [n1,n1+n2)) has degree d2.
struct BiregularParams {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t d1 = 0;
  std::size_t d2 = 0;
};

struct GnpParams {
  std::size_t n = 0;
  double p = 0.0;
};

/// Chung-Lu graph with Pareto expected degrees, P(W > w) = (w / min_weight)^(1 - exponent).
/// Stand-in for the hyper-soft configuration model.
struct ParetoChungLuParams {
  std::size_t n = 0;
  double exponent = 2.5;
  double min_weight = 2.0;
};

using ModelParams = std::variant<SbmParams, RegularParams, BiregularParams, GnpParams, ParetoChungLuParams>;

struct GeneratorSpec {
  ModelParams model;
  std::uint64_t seed = 0;
};

/// A generated graph plus ground-truth labels: block index for sbm, part
/// index (0/1) for biregular, empty otherwise.
struct GeneratedGraph {
  Graph graph;
  std::vector<int> labels;
};

/// Throws std::invalid_argument when the spec violates its model's constraints.
void validate(const GeneratorSpec& spec);

/// Draws a graph; identical specs give identical graphs. Throws
/// std::invalid_argument for invalid specs and std::runtime_error when the
/// rejection samplers exhaust their retry budget.
GeneratedGraph generate(const GeneratorSpec& spec);

/// Maximum number of full pairing attempts for regular/biregular models.
inline constexpr std::size_t kPairingAttempts = 20000;

std::string model_name(const ModelParams& model);

}  // namespace nbpr
