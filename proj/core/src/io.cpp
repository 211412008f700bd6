#include "nbpr/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace nbpr {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_unsigned_integer(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

template <typename T>
T parse_number(std::string_view s, const std::string& what) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("cannot parse " + what + " from '" + std::string(s) + "'");
  return value;
}

double parse_double(std::string_view s, const std::string& what) {
  // std::from_chars for double is available but keep strtod for "inf" handling parity.
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) throw std::invalid_argument("cannot parse " + what + " from '" + tmp + "'");
  return v;
}

bool label_less(const std::string& a, const std::string& b, bool numeric) {
  if (!numeric) return a < b;
  // Compare as integers without overflow: fewer digits (after leading zeros) is smaller.
  auto strip = [](std::string_view s) {
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
    return s;
  };
  auto sa = strip(a), sb = strip(b);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return sa < sb;
  return a < b;
}

// --- GML ---------------------------------------------------------------

struct GmlToken {
  std::string text;
  bool quoted = false;
  std::size_t line = 0;
};

std::vector<GmlToken> tokenize_gml(std::string_view text) {
  std::vector<GmlToken> tokens;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '[' || c == ']') {
      tokens.push_back({std::string(1, c), false, line});
      ++i;
    } else if (c == '"') {
      const std::size_t start_line = line;
      std::string s;
      ++i;
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\n') ++line;
        s.push_back(text[i++]);
      }
      if (i == text.size()) throw ParseError("unterminated string", start_line);
      ++i;
      tokens.push_back({std::move(s), true, start_line});
    } else {
      std::string s;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '[' &&
             text[i] != ']' && text[i] != '"') {
        s.push_back(text[i++]);
      }
      tokens.push_back({std::move(s), false, line});
    }
  }
  return tokens;
}

struct GmlItem {
  std::string key;
  std::string value;
  bool quoted = false;
  std::vector<GmlItem> children;
  bool is_list = false;
  std::size_t line = 0;
};

std::vector<GmlItem> parse_gml_list(const std::vector<GmlToken>& tokens, std::size_t& pos, bool nested) {
  std::vector<GmlItem> items;
  while (pos < tokens.size()) {
    const auto& key = tokens[pos];
    if (key.text == "]" && !key.quoted) {
      if (!nested) throw ParseError("unbalanced ']'", key.line);
      ++pos;
      return items;
    }
    if (key.quoted || key.text == "[") throw ParseError("expected a key", key.line);
    if (pos + 1 >= tokens.size()) throw ParseError("key '" + key.text + "' has no value", key.line);
    GmlItem item;
    item.key = key.text;
    item.line = key.line;
    const auto& val = tokens[pos + 1];
    pos += 2;
    if (val.text == "[" && !val.quoted) {
      item.is_list = true;
      item.children = parse_gml_list(tokens, pos, true);
    } else if (val.text == "]" && !val.quoted) {
      throw ParseError("key '" + key.text + "' has no value", key.line);
    } else {
      item.value = val.text;
      item.quoted = val.quoted;
    }
    items.push_back(std::move(item));
  }
  if (nested) throw ParseError("missing ']'", tokens.empty() ? 0 : tokens.back().line);
  return items;
}

const GmlItem* find_child(const GmlItem& list, std::string_view key) {
  for (const auto& c : list.children) {
    if (!c.is_list && c.key == key) return &c;
  }
  return nullptr;
}

std::string escape_manifest(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '\\') out += "\\\\";
    else if (c == '\n') out += "\\n";
    else out.push_back(c);
  }
  return out;
}

std::string unescape_manifest(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      ++i;
      out.push_back(s[i] == 'n' ? '\n' : s[i]);
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

}  // namespace

LabeledGraph parse_edge_list(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> raw;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    std::istringstream fields{std::string(line)};
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw ParseError("expected two node labels, got '" + std::string(line) + "'", line_no);
    }
    if (a == b) throw ParseError("self-loop on node '" + a + "'", line_no);
    raw.emplace_back(std::move(a), std::move(b));
    if (end == text.size()) break;
  }

  std::set<std::string> names;
  for (const auto& [a, b] : raw) {
    names.insert(a);
    names.insert(b);
  }
  const bool numeric = std::all_of(names.begin(), names.end(), [](const std::string& s) { return is_unsigned_integer(s); });
  LabeledGraph out;
  out.labels.assign(names.begin(), names.end());
  std::sort(out.labels.begin(), out.labels.end(),
            [numeric](const std::string& x, const std::string& y) { return label_less(x, y, numeric); });
  std::unordered_map<std::string, NodeId> index;
  for (std::size_t i = 0; i < out.labels.size(); ++i) index.emplace(out.labels[i], static_cast<NodeId>(i));

  std::vector<EdgePair> pairs;
  pairs.reserve(raw.size());
  for (const auto& [a, b] : raw) pairs.emplace_back(index.at(a), index.at(b));
  if (out.labels.empty()) throw ParseError("edge list contains no edges", 0);
  out.graph = build_graph(pairs, out.labels.size());
  return out;
}

std::string write_edge_list(const LabeledGraph& g) {
  std::string out;
  for (auto [u, v] : g.graph.edges()) {
    out += g.labels.at(u);
    out += ' ';
    out += g.labels.at(v);
    out += '\n';
  }
  return out;
}

GmlGraph parse_gml(std::string_view text) {
  const auto tokens = tokenize_gml(text);
  std::size_t pos = 0;
  const auto top = parse_gml_list(tokens, pos, false);
  const GmlItem* graph = nullptr;
  for (const auto& item : top) {
    if (item.is_list && item.key == "graph") {
      graph = &item;
      break;
    }
  }
  if (!graph) throw ParseError("no graph [ ... ] block", 0);

  GmlGraph out;
  std::unordered_map<std::string, NodeId> index;
  for (const auto& item : graph->children) {
    if (!item.is_list || item.key != "node") continue;
    const auto* id = find_child(item, "id");
    if (!id) throw ParseError("node without id", item.line);
    if (index.contains(id->value)) throw ParseError("duplicate node id " + id->value, item.line);
    index.emplace(id->value, static_cast<NodeId>(out.labels.size()));
    const auto* label = find_child(item, "label");
    out.labels.push_back(label ? label->value : id->value);
    const auto* value = find_child(item, "value");
    if (value && !value->quoted) {
      try {
        out.values.emplace_back(parse_number<long>(value->value, "node value"));
      } catch (const std::invalid_argument&) {
        throw ParseError("node value '" + value->value + "' is not an integer", value->line);
      }
    } else {
      out.values.emplace_back(std::nullopt);
    }
  }
  if (out.labels.empty()) throw ParseError("graph has no nodes", graph->line);

  std::vector<EdgePair> pairs;
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& item : graph->children) {
    if (!item.is_list || item.key != "edge") continue;
    const auto* source = find_child(item, "source");
    const auto* target = find_child(item, "target");
    if (!source || !target) throw ParseError("edge without source or target", item.line);
    auto s = index.find(source->value);
    auto t = index.find(target->value);
    if (s == index.end() || t == index.end()) throw ParseError("edge refers to an unknown node", item.line);
    if (s->second == t->second) throw ParseError("self-loop on node " + source->value, item.line);
    auto key = std::minmax(s->second, t->second);
    if (!seen.insert(key).second) {
      out.warnings.push_back("duplicate edge " + source->value + " - " + target->value + " at line " +
                             std::to_string(item.line) + " ignored");
      continue;
    }
    pairs.emplace_back(s->second, t->second);
  }
  out.graph = build_graph(pairs, out.labels.size());
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = trim(text.substr(start, end - start));
    start = end + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value, got '" + std::string(item) + "'");
    out.emplace_back(std::string(trim(item.substr(0, eq))), std::string(trim(item.substr(eq + 1))));
  }
  return out;
}

GeneratorSpec parse_generator_spec(std::string_view text, std::uint64_t seed) {
  const auto colon = text.find(':');
  const std::string model(trim(text.substr(0, colon)));
  std::map<std::string, std::string> kv;
  if (colon != std::string_view::npos) {
    for (auto& [k, v] : parse_key_values(text.substr(colon + 1))) kv[k] = v;
  }
  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument(model + ": missing parameter '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto size = [&](const std::string& key) { return parse_number<std::size_t>(take(key), key); };
  auto real = [&](const std::string& key) { return parse_double(take(key), key); };

  GeneratorSpec spec;
  spec.seed = seed;
  if (model == "sbm") {
    SbmParams p;
    const auto sizes = take("sizes");
    std::size_t s = 0;
    while (s <= sizes.size()) {
      auto e = sizes.find('/', s);
      if (e == std::string::npos) e = sizes.size();
      p.sizes.push_back(parse_number<std::size_t>(std::string_view(sizes).substr(s, e - s), "block size"));
      s = e + 1;
    }
    p.p_in = real("p_in");
    p.p_out = real("p_out");
    spec.model = p;
  } else if (model == "regular") {
    spec.model = RegularParams{size("n"), size("k")};
  } else if (model == "biregular") {
    BiregularParams p;
    p.n1 = size("n1");
    p.n2 = size("n2");
    p.d1 = size("d1");
    p.d2 = size("d2");
    spec.model = p;
  } else if (model == "gnp") {
    GnpParams p;
    p.n = size("n");
    p.p = real("p");
    spec.model = p;
  } else if (model == "pareto-cl") {
    ParetoChungLuParams p;
    p.n = size("n");
    if (kv.contains("exponent")) p.exponent = real("exponent");
    if (kv.contains("min_weight")) p.min_weight = real("min_weight");
    spec.model = p;
  } else {
    throw std::invalid_argument("unknown graph model '" + model + "'");
  }
  if (!kv.empty()) throw std::invalid_argument(model + ": unknown parameter '" + kv.begin()->first + "'");
  validate(spec);
  return spec;
}

std::string format_generator_spec(const GeneratorSpec& spec) {
  std::ostringstream out;
  out << model_name(spec.model) << ':';
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SbmParams>) {
          out << "sizes=";
          for (std::size_t i = 0; i < p.sizes.size(); ++i) out << (i ? "/" : "") << p.sizes[i];
          out << ",p_in=" << format_number(p.p_in) << ",p_out=" << format_number(p.p_out);
        } else if constexpr (std::is_same_v<T, RegularParams>) {
          out << "n=" << p.n << ",k=" << p.k;
        } else if constexpr (std::is_same_v<T, BiregularParams>) {
          out << "n1=" << p.n1 << ",n2=" << p.n2 << ",d1=" << p.d1 << ",d2=" << p.d2;
        } else if constexpr (std::is_same_v<T, GnpParams>) {
          out << "n=" << p.n << ",p=" << format_number(p.p);
        } else {
          out << "n=" << p.n << ",exponent=" << format_number(p.exponent)
              << ",min_weight=" << format_number(p.min_weight);
        }
      },
      spec.model);
  return out.str();
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_field(fields[i]);
  }
  out_ << "\r\n";
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "command=" << escape_manifest(m.command) << '\n';
  out << "version=" << escape_manifest(m.version) << '\n';
  out << "wall_seconds=" << format_number(m.wall_seconds) << '\n';
  for (std::size_t i = 0; i < m.args.size(); ++i) out << "arg." << i << '=' << escape_manifest(m.args[i]) << '\n';
  for (const auto& [k, v] : m.params) out << "param." << k << '=' << escape_manifest(v) << '\n';
  for (const auto& [k, v] : m.input_digests) out << "input." << k << "=fnv1a64:" << v << '\n';
}

RunManifest read_manifest(const std::filesystem::path& path) {
  const auto text = read_file(path);
  RunManifest m;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::map<std::size_t, std::string> args;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("manifest line without '='", line_no);
    const std::string key = line.substr(0, eq);
    const std::string value = unescape_manifest(std::string_view(line).substr(eq + 1));
    if (key == "command") m.command = value;
    else if (key == "version") m.version = value;
    else if (key == "wall_seconds") m.wall_seconds = parse_double(value, "wall_seconds");
    else if (key.starts_with("arg.")) args[parse_number<std::size_t>(std::string_view(key).substr(4), "arg index")] = value;
    else if (key.starts_with("param.")) m.params.emplace_back(key.substr(6), value);
    else if (key.starts_with("input.")) {
      std::string digest = value;
      if (digest.starts_with("fnv1a64:")) digest = digest.substr(8);
      m.input_digests.emplace_back(key.substr(6), digest);
    } else {
      throw ParseError("unknown manifest key '" + key + "'", line_no);
    }
  }
  for (auto& [i, a] : args) m.args.push_back(std::move(a));
  return m;
}

}  // namespace nbpr
