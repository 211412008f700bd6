#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nbpr/generators.hpp"
#include "nbpr/graph.hpp"

namespace nbpr {

/// Malformed input; line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? what + " at line " + std::to_string(line) : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Graph plus the external name of every node.
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;
};

/// Parses "u v" lines; '#' starts a comment, blank lines are skipped. Labels
/// are reindexed densely: numerically when every label is a non-negative
/// integer, lexicographically otherwise.
LabeledGraph parse_edge_list(std::string_view text);

/// One "u v" line per undirected edge, in edge-rank order.
std::string write_edge_list(const LabeledGraph& g);

/// Graph read from GML with the optional integer "value" attribute of each node.
struct GmlGraph {
  Graph graph;
  std::vector<std::string> labels;
  std::vector<std::optional<long>> values;
  std::vector<std::string> warnings;
};

/// Reads node [ id .. label .. value .. ] and edge [ source .. target .. ]
/// blocks. Node order is order of appearance. Duplicate edges are dropped
/// with a warning.
GmlGraph parse_gml(std::string_view text);

/// "model:key=value,..." e.g. "sbm:sizes=30/30/30,p_in=0.9,p_out=0.1",
/// "regular:n=20,k=3", "biregular:n1=4,n2=6,d1=3,d2=2", "gnp:n=1000,p=0.01",
/// "pareto-cl:n=1000,exponent=2.5,min_weight=4". The seed is set separately.
GeneratorSpec parse_generator_spec(std::string_view text, std::uint64_t seed = 0);
std::string format_generator_spec(const GeneratorSpec& spec);

/// Splits "a=1,b=2" into ordered key/value pairs.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

/// Twelve significant digits.
std::string format_number(double x);

/// RFC 4180 quoting when the field needs it.
std::string csv_field(std::string_view field);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

/// 64-bit FNV-1a digest of a byte string, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

/// Flat key=value record written next to every output.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, std::string>> input_digests;
  std::string version;
  double wall_seconds = 0.0;
};

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace nbpr
