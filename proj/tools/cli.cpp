#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "CLI11.hpp"
#include "nbpr/clustering.hpp"
#include "nbpr/edge_lift.hpp"
#include "nbpr/experiments.hpp"
#include "nbpr/generators.hpp"
#include "nbpr/io.hpp"
#include "nbpr/pagerank.hpp"
#include "nbpr/random.hpp"

#ifndef NBPR_VERSION
#define NBPR_VERSION "0.0.0"
#endif

namespace nbpr::cli {
namespace {

namespace fs = std::filesystem;
using Params = std::vector<std::pair<std::string, std::string>>;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// --- shared option plumbing ---------------------------------------------

struct DampingOptions {
  double epsilon = 0.85;
  std::optional<double> alpha;

  void add(CLI::App* app) {
    auto* eps = app->add_option("--epsilon", epsilon, "probability of following an edge")->capture_default_str();
    auto* a = app->add_option("--alpha", alpha, "jumping factor, epsilon = 1 - alpha");
    eps->excludes(a);
  }

  double resolve() const {
    const double e = alpha ? 1.0 - *alpha : epsilon;
    if (!(e > 0.0 && e < 1.0)) throw UsageError("epsilon must lie strictly between 0 and 1");
    return e;
  }
};

struct OutputOptions {
  std::string out;
  std::string manifest;

  void add(CLI::App* app) {
    app->add_option("--out", out, "CSV output path (stdout when omitted)");
    app->add_option("--manifest", manifest, "manifest path (default <out>.manifest)");
  }

  fs::path manifest_path() const {
    if (!manifest.empty()) return manifest;
    if (!out.empty()) return out + ".manifest";
    return {};
  }
};

class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  void close() {
    stream_->flush();
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw std::runtime_error("write failed");
    }
  }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

struct Input {
  Graph graph;
  std::vector<std::string> labels;
  std::vector<std::optional<long>> values;
  bool gml = false;
  std::string digest;
};

Input load_input(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path);
  Input in;
  in.digest = fnv1a_hex(text);
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".gml") {
    auto g = parse_gml(text);
    for (const auto& w : g.warnings) err << "warning: " << w << '\n';
    in.graph = std::move(g.graph);
    in.labels = std::move(g.labels);
    in.values = std::move(g.values);
    in.gml = true;
  } else {
    auto g = parse_edge_list(text);
    in.graph = std::move(g.graph);
    in.labels = std::move(g.labels);
  }
  return in;
}

double parse_mu(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfiniteMu;
  std::size_t used = 0;
  double mu = 0.0;
  try {
    mu = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("invalid mu '" + text + "'");
  }
  if (used != text.size() || !(mu >= 0.0)) throw UsageError("mu must be a non-negative number or 'inf'");
  return mu;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (what == "mu") {
      out.push_back(parse_mu(item));
      continue;
    }
    std::size_t used = 0;
    try {
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw UsageError("invalid " + what + " '" + item + "'");
  }
  if (out.empty()) throw UsageError("empty " + what + " list");
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = text.find(':', a == std::string::npos ? a : a + 1);
  if (a == std::string::npos || b == std::string::npos) throw UsageError("grid must look like LO:HI:COUNT");
  try {
    std::size_t u1 = 0, u2 = 0, u3 = 0;
    const std::string s1 = text.substr(0, a), s2 = text.substr(a + 1, b - a - 1), s3 = text.substr(b + 1);
    const double lo = std::stod(s1, &u1);
    const double hi = std::stod(s2, &u2);
    const long count = std::stol(s3, &u3);
    if (u1 != s1.size() || u2 != s2.size() || u3 != s3.size()) throw UsageError("");
    if (count < 1 || !(lo >= 0.0) || (count > 1 && !(hi > lo))) throw UsageError("");
    return linear_grid(lo, hi, static_cast<std::size_t>(count));
  } catch (const std::exception&) {
    throw UsageError("grid must look like LO:HI:COUNT with 0 <= LO < HI and COUNT >= 1");
  }
}

// Weight file: "label weight" per line, '#' comments. Unlisted nodes get 0.
std::vector<double> load_teleport(const std::string& path, const Input& in) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < in.labels.size(); ++i) index.emplace(in.labels[i], i);
  std::vector<double> v(in.labels.size(), 0.0);
  std::istringstream lines(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream fields(line);
    std::string label, extra;
    double w = 0.0;
    if (!(fields >> label)) continue;
    if (!(fields >> w) || (fields >> extra) || !(w >= 0.0) || std::isinf(w)) {
      throw ParseError("expected 'label weight' with a finite non-negative weight", line_no);
    }
    auto it = index.find(label);
    if (it == index.end()) throw ParseError("unknown node '" + label + "'", line_no);
    v[it->second] += w;
  }
  double total = 0.0;
  for (double w : v) total += w;
  if (!(total > 0.0)) throw std::runtime_error("teleport weights sum to zero");
  for (double& w : v) w /= total;
  return v;
}

std::vector<int> load_truth(const std::string& source, const Input& in) {
  std::vector<int> truth(in.labels.size());
  if (source == "gml-value") {
    if (!in.gml) throw UsageError("--truth gml-value needs a .gml input");
    for (std::size_t i = 0; i < in.values.size(); ++i) {
      if (!in.values[i]) throw std::runtime_error("node '" + in.labels[i] + "' has no value attribute");
      truth[i] = static_cast<int>(*in.values[i]);
    }
    return truth;
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < in.labels.size(); ++i) index.emplace(in.labels[i], i);
  std::vector<char> seen(in.labels.size(), 0);
  std::istringstream lines(read_file(source));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream fields(line);
    std::string label, extra;
    int value = 0;
    if (!(fields >> label)) continue;
    if (!(fields >> value) || (fields >> extra)) throw ParseError("expected 'label class'", line_no);
    auto it = index.find(label);
    if (it == index.end()) throw ParseError("unknown node '" + label + "'", line_no);
    truth[it->second] = value;
    seen[it->second] = 1;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw std::runtime_error("truth file has no class for node '" + in.labels[i] + "'");
  }
  return truth;
}

class Run {
 public:
  Run(std::string command, const std::vector<std::string>& args)
      : start_(std::chrono::steady_clock::now()) {
    manifest_.command = std::move(command);
    manifest_.args = args;
    manifest_.version = NBPR_VERSION;
  }

  void param(const std::string& key, const std::string& value) { manifest_.params.emplace_back(key, value); }
  void param(const std::string& key, double value) { param(key, format_number(value)); }
  void input(const std::string& path, const std::string& digest) { manifest_.input_digests.emplace_back(path, digest); }

  void finish(const OutputOptions& o) {
    const auto path = o.manifest_path();
    if (path.empty()) return;
    manifest_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    write_manifest(manifest_, path);
  }

 private:
  RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

std::string format_mu(double mu) { return std::isinf(mu) ? "inf" : format_number(mu); }

// --- subcommands -----------------------------------------------------------

struct ComputeOptions {
  std::string input;
  DampingOptions damping;
  std::string mu = "1";
  std::string mode = "tail-degree";
  std::string teleport = "uniform";
  std::string method = "power";
  double tol = 1e-12;
  std::size_t max_iter = 100000;
  OutputOptions output;
};

int run_compute(const ComputeOptions& o, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  PageRankConfig cfg;
  cfg.epsilon = o.damping.resolve();
  cfg.mu = parse_mu(o.mu);
  cfg.mode = o.mode == "head-copy" ? LiftMode::HeadCopy : LiftMode::TailDegree;
  cfg.method = o.method == "linear" ? SolverMethod::LinearSeries : SolverMethod::Power;
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");

  Run run("compute", args);
  const Input in = load_input(o.input, err);
  run.input(o.input, in.digest);
  if (o.teleport != "uniform") {
    cfg.teleport = load_teleport(o.teleport, in);
    run.input(o.teleport, fnv1a_hex(read_file(o.teleport)));
  }
  run.param("epsilon", cfg.epsilon);
  run.param("mu", format_mu(cfg.mu));
  run.param("mode", o.mode);
  run.param("teleport", o.teleport);
  run.param("method", o.method);
  run.param("tol", cfg.tol);
  run.param("max_iter", std::to_string(cfg.max_iter));

  const auto result = mu_pagerank(in.graph, cfg);
  if (!result.nodes.converged) {
    err << "error: solver did not converge after " << result.nodes.iterations << " iterations (residual "
        << format_number(result.nodes.residual) << ")\n";
    return kExitFailure;
  }
  const auto order = rank_order(result.nodes.values);
  std::vector<std::size_t> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r + 1;

  CsvSink sink(o.output.out, out);
  CsvWriter csv(sink.stream());
  csv.row({"node", "value", "rank"});
  for (std::size_t i = 0; i < in.labels.size(); ++i) {
    csv.row({in.labels[i], format_number(result.nodes.values[i]), std::to_string(rank[i])});
  }
  sink.close();
  run.finish(o.output);
  return kExitOk;
}

struct SweepOptions {
  std::string input;
  DampingOptions damping;
  std::string grid = "0:100:20";
  double tol_mono = kMonotoneTolerance;
  std::string verdicts;
  OutputOptions output;
};

int run_sweep(const SweepOptions& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const double epsilon = o.damping.resolve();
  const auto grid = parse_grid(o.grid);
  if (!(o.tol_mono >= 0.0)) throw UsageError("--tol-mono must be non-negative");
  std::string verdict_path = o.verdicts;
  if (verdict_path.empty() && !o.output.out.empty()) verdict_path = o.output.out + ".verdicts.csv";

  Run run("sweep", args);
  const Input in = load_input(o.input, err);
  run.input(o.input, in.digest);
  run.param("epsilon", epsilon);
  run.param("grid", o.grid);
  run.param("tol_mono", o.tol_mono);

  const auto result = mu_sweep(in.graph, epsilon, grid, o.tol_mono);

  CsvSink sink(o.output.out, out);
  CsvWriter csv(sink.stream());
  std::vector<std::string> header{"mu", "status", "range_width"};
  header.insert(header.end(), in.labels.begin(), in.labels.end());
  csv.row(header);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::vector<std::string> row{format_number(grid[k]), result.failed[k] ? "failed" : "ok"};
    if (result.failed[k]) {
      row.resize(header.size());
    } else {
      row.push_back(format_number(result.range_widths[k]));
      for (double x : result.values[k]) row.push_back(format_number(x));
    }
    csv.row(row);
  }
  sink.close();

  if (!verdict_path.empty()) {
    CsvSink vsink(verdict_path, out);
    CsvWriter vcsv(vsink.stream());
    vcsv.row({"node", "verdict"});
    for (std::size_t i = 0; i < in.labels.size(); ++i) vcsv.row({in.labels[i], to_string(result.verdicts[i])});
    vsink.close();
  }
  std::ostream& note = o.output.out.empty() ? err : out;
  note << "range width trend: " << to_string(result.range_trend) << '\n';
  std::map<Trend, std::size_t> counts;
  for (Trend t : result.verdicts) ++counts[t];
  for (const auto& [t, c] : counts) note << to_string(t) << ": " << c << '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (result.failed[k]) err << "warning: solve failed at mu = " << format_number(grid[k]) << '\n';
  }
  run.finish(o.output);
  return kExitOk;
}

struct VerifyOptions {
  std::string family;
  std::string params;
  DampingOptions damping;
  std::string mus = "0,0.3,2,10";
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t graphs = 1;
  OutputOptions output;
};

int run_verify(const VerifyOptions& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const double epsilon = o.damping.resolve();
  const auto mus = parse_list(o.mus, "mu");
  if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
  if (o.graphs == 0) throw UsageError("--graphs must be positive");
  GeneratorSpec base;
  try {
    base = parse_generator_spec(o.family + ":" + o.params, o.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  Run run("verify", args);
  run.param("family", o.family);
  run.param("params", o.params);
  run.param("epsilon", epsilon);
  run.param("mus", o.mus);
  run.param("tol", o.tol);
  run.param("seed", std::to_string(o.seed));
  run.param("graphs", std::to_string(o.graphs));

  constexpr std::size_t kConnectAttempts = 100;
  double max_gap = 0.0;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < o.graphs; ++i) {
    std::optional<Graph> g;
    for (std::size_t a = 0; a < kConnectAttempts && !g; ++a) {
      GeneratorSpec draw = base;
      draw.seed = derive_seed(derive_seed(o.seed, i), a);
      auto generated = generate(draw);
      if (generated.graph.connected()) g = std::move(generated.graph);
    }
    if (!g) {
      err << "error: no connected graph after " << kConnectAttempts << " draws\n";
      return kExitFailure;
    }
    PageRankConfig cfg;
    cfg.epsilon = epsilon;
    const EdgeLift lift = build_lift(*g);
    const auto reference = mu_pagerank(*g, lift, cfg).nodes;
    std::optional<std::vector<double>> closed;
    if (const auto* p = std::get_if<BiregularParams>(&base.model)) {
      closed = biregular_closed_form(p->n1, p->n2, p->d1, p->d2, epsilon);
    }
    for (double mu : mus) {
      cfg.mu = mu;
      const auto pi = mu_pagerank(*g, lift, cfg).nodes;
      if (!pi.converged || !reference.converged) {
        err << "error: solver did not converge at mu = " << format_mu(mu) << '\n';
        return kExitFailure;
      }
      double gap = 0.0, closed_gap = 0.0;
      for (std::size_t x = 0; x < pi.values.size(); ++x) {
        gap = std::max(gap, std::abs(pi.values[x] - reference.values[x]));
        if (closed) closed_gap = std::max(closed_gap, std::abs(pi.values[x] - (*closed)[x]));
      }
      max_gap = std::max({max_gap, gap, closed_gap});
      rows.push_back({std::to_string(i), format_mu(mu), format_number(gap),
                      closed ? format_number(closed_gap) : std::string()});
    }
  }

  if (!o.output.out.empty()) {
    CsvSink sink(o.output.out, out);
    CsvWriter csv(sink.stream());
    csv.row({"graph", "mu", "gap", "closed_form_gap"});
    for (const auto& r : rows) csv.row(r);
    sink.close();
  }
  out << "max gap: " << format_number(max_gap) << " (tol " << format_number(o.tol) << ")\n";
  run.finish(o.output);
  return max_gap <= o.tol ? kExitOk : kExitFailure;
}

struct OverlapOptions {
  std::string model;
  std::size_t trials = kDefaultTrials;
  std::string percents = "1,5,10,20";
  DampingOptions damping;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  OutputOptions output;
};

int run_overlap(const OverlapOptions& o, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  const double epsilon = o.damping.resolve();
  const auto percents = parse_list(o.percents, "percent");
  for (double p : percents) {
    if (!(p > 0.0 && p <= 100.0)) throw UsageError("percent levels must lie in (0,100]");
  }
  if (o.trials == 0) throw UsageError("--trials must be positive");
  GeneratorSpec spec;
  try {
    spec = parse_generator_spec(o.model, o.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  Run run("overlap", args);
  run.param("model", format_generator_spec(spec));
  run.param("trials", std::to_string(o.trials));
  run.param("percents", o.percents);
  run.param("epsilon", epsilon);
  run.param("seed", std::to_string(o.seed));

  const auto report = overlap_experiment(spec, o.trials, percents, epsilon, o.threads);

  CsvSink sink(o.output.out, out);
  CsvWriter csv(sink.stream());
  std::vector<std::string> header{"trial", "seed", "nodes", "status"};
  for (double p : percents) header.push_back("overlap_" + format_number(p));
  csv.row(header);
  std::size_t skipped = 0;
  for (const auto& t : report.per_trial) {
    std::vector<std::string> row{std::to_string(t.index), std::to_string(derive_seed(o.seed, t.index)),
                                 std::to_string(t.nodes), t.skipped ? "skipped" : "ok"};
    if (t.skipped) {
      ++skipped;
      row.resize(header.size());
    } else {
      for (double x : t.overlaps) row.push_back(format_number(x));
    }
    csv.row(row);
  }
  sink.close();

  std::ostream& note = o.output.out.empty() ? err : out;
  for (std::size_t j = 0; j < percents.size(); ++j) {
    note << "mean top-" << format_number(percents[j]) << "% overlap: " << format_number(report.mean_overlap[j])
         << '\n';
  }
  if (skipped) err << "warning: " << skipped << " of " << o.trials << " trials skipped\n";
  run.finish(o.output);
  return skipped == o.trials ? kExitFailure : kExitOk;
}

struct ClusterCliOptions {
  std::string input;
  std::size_t k = 2;
  DampingOptions damping;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  std::size_t max_iter = 1000;
  std::size_t threads = 1;
  std::string truth;
  OutputOptions output;
};

int run_cluster(const ClusterCliOptions& o, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  ClusterOptions opts;
  opts.k = o.k;
  opts.epsilon = o.damping.resolve();
  opts.tol = o.tol;
  opts.seed = o.seed;
  opts.restarts = o.restarts;
  opts.max_iter = o.max_iter;
  opts.threads = o.threads;
  if (opts.k == 0) throw UsageError("--k must be positive");
  if (opts.restarts == 0) throw UsageError("--restarts must be positive");
  if (!(opts.tol > 0.0)) throw UsageError("--tol must be positive");

  Run run("cluster", args);
  const Input in = load_input(o.input, err);
  run.input(o.input, in.digest);
  if (opts.k > in.graph.node_count()) throw UsageError("--k exceeds the number of nodes");
  std::vector<int> truth;
  if (!o.truth.empty()) {
    truth = load_truth(o.truth, in);
    if (o.truth != "gml-value") run.input(o.truth, fnv1a_hex(read_file(o.truth)));
  }
  run.param("k", std::to_string(opts.k));
  run.param("epsilon", opts.epsilon);
  run.param("tol", opts.tol);
  run.param("seed", std::to_string(opts.seed));
  run.param("restarts", std::to_string(opts.restarts));
  run.param("max_iter", std::to_string(opts.max_iter));
  if (!o.truth.empty()) run.param("truth", o.truth);

  const auto model = cluster_best(in.graph, opts);

  CsvSink sink(o.output.out, out);
  CsvWriter csv(sink.stream());
  std::vector<std::string> header{"node", "cluster"};
  if (!truth.empty()) header.push_back("truth");
  csv.row(header);
  for (std::size_t i = 0; i < in.labels.size(); ++i) {
    std::vector<std::string> row{in.labels[i], std::to_string(model.labels[i])};
    if (!truth.empty()) row.push_back(std::to_string(truth[i]));
    csv.row(row);
  }
  sink.close();

  std::ostream& note = o.output.out.empty() ? err : out;
  note << "iterations: " << model.iterations << (model.converged ? "" : " (not converged)") << '\n';
  note << "within distance: " << format_number(model.within_distance) << '\n';
  if (!truth.empty()) {
    note << "accuracy: " << format_number(best_match_accuracy(model.labels, truth)) << '\n';
    note << "nmi: " << format_number(nmi(model.labels, truth)) << '\n';
  }
  run.finish(o.output);
  return kExitOk;
}

struct WalkOptions {
  std::string input;
  DampingOptions damping;
  std::string mu = "1";
  std::size_t steps = 1000000;
  std::uint64_t seed = 0;
  OutputOptions output;
};

int run_walk(const WalkOptions& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const double epsilon = o.damping.resolve();
  const double mu = parse_mu(o.mu);
  if (o.steps == 0) throw UsageError("--steps must be positive");

  Run run("walk", args);
  const Input in = load_input(o.input, err);
  run.input(o.input, in.digest);
  run.param("epsilon", epsilon);
  run.param("mu", format_mu(mu));
  run.param("steps", std::to_string(o.steps));
  run.param("seed", std::to_string(o.seed));

  const auto freq = monte_carlo_walk(in.graph, epsilon, mu, o.steps, o.seed);

  CsvSink sink(o.output.out, out);
  CsvWriter csv(sink.stream());
  csv.row({"node", "frequency"});
  for (std::size_t i = 0; i < in.labels.size(); ++i) csv.row({in.labels[i], format_number(freq[i])});
  sink.close();
  run.finish(o.output);
  return kExitOk;
}

struct ReplayOptions {
  std::string manifest;
  std::string out;
};

std::vector<std::string> replay_args(const ReplayOptions& o) {
  const auto m = read_manifest(o.manifest);
  if (m.args.empty()) throw std::runtime_error("manifest has no recorded arguments");
  if (m.args.front() == "replay") throw std::runtime_error("manifest records a replay");
  auto args = m.args;
  if (o.out.empty()) return args;
  // Redirect the CSV and drop any explicit manifest path so the copy lands next to it.
  std::vector<std::string> rewritten;
  bool has_out = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if ((a == "--out" || a == "--manifest" || a == "--verdicts") && i + 1 < args.size()) {
      if (a == "--out") {
        rewritten.push_back("--out");
        rewritten.push_back(o.out);
        has_out = true;
      }
      ++i;
    } else if (a.starts_with("--out=")) {
      rewritten.push_back("--out=" + o.out);
      has_out = true;
    } else if (!a.starts_with("--manifest=") && !a.starts_with("--verdicts=")) {
      rewritten.push_back(a);
    }
  }
  if (!has_out) {
    rewritten.push_back("--out");
    rewritten.push_back(o.out);
  }
  return rewritten;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PageRank variants on the directed-edge lift", "nbpr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", NBPR_VERSION);

  ComputeOptions compute;
  auto* c = app.add_subcommand("compute", "mu-PageRank of one graph");
  c->add_option("--input", compute.input, "edge list or .gml file")->required();
  compute.damping.add(c);
  c->add_option("--mu", compute.mu, "backtracking weight, a number >= 0 or 'inf'")->capture_default_str();
  c->add_option("--mode", compute.mode, "teleport lift")
      ->check(CLI::IsMember({"tail-degree", "head-copy"}))
      ->capture_default_str();
  c->add_option("--teleport", compute.teleport, "'uniform' or a file of 'label weight' lines")
      ->capture_default_str();
  c->add_option("--method", compute.method, "solver")
      ->check(CLI::IsMember({"power", "linear"}))
      ->capture_default_str();
  c->add_option("--tol", compute.tol, "l1 stopping tolerance")->capture_default_str();
  c->add_option("--max-iter", compute.max_iter, "iteration cap")->capture_default_str();
  compute.output.add(c);

  SweepOptions sweep;
  auto* s = app.add_subcommand("sweep", "node values across a grid of mu");
  s->add_option("--input", sweep.input, "edge list or .gml file")->required();
  sweep.damping.add(s);
  s->add_option("--grid", sweep.grid, "LO:HI:COUNT")->capture_default_str();
  s->add_option("--tol-mono", sweep.tol_mono, "tolerance for monotone verdicts")->capture_default_str();
  s->add_option("--verdicts", sweep.verdicts, "per-node verdict CSV (default <out>.verdicts.csv)");
  sweep.output.add(s);

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "check mu-independence on regular or biregular graphs");
  v->add_option("--family", verify.family)->required()->check(CLI::IsMember({"regular", "biregular"}));
  v->add_option("--params", verify.params, "e.g. n=20,k=3 or n1=4,n2=6,d1=3,d2=2")->required();
  verify.damping.add(v);
  v->add_option("--mus", verify.mus, "comma-separated mu values")->capture_default_str();
  v->add_option("--tol", verify.tol, "largest accepted l-infinity gap")->capture_default_str();
  v->add_option("--seed", verify.seed)->capture_default_str();
  v->add_option("--graphs", verify.graphs, "number of random graphs")->capture_default_str();
  verify.output.add(v);

  OverlapOptions overlap;
  auto* ov = app.add_subcommand("overlap", "top-k overlap of standard and infinity PageRank");
  ov->add_option("--model", overlap.model, "e.g. pareto-cl:n=1000 or gnp:n=1000,p=0.01")->required();
  ov->add_option("--trials", overlap.trials)->capture_default_str();
  ov->add_option("--percents", overlap.percents, "comma-separated percent levels")->capture_default_str();
  overlap.damping.add(ov);
  ov->add_option("--seed", overlap.seed)->capture_default_str();
  ov->add_option("--threads", overlap.threads)->capture_default_str();
  overlap.output.add(ov);

  ClusterCliOptions clus;
  auto* cl = app.add_subcommand("cluster", "infinity-PageRank clustering");
  cl->add_option("--input", clus.input, "edge list or .gml file")->required();
  cl->add_option("--k", clus.k, "number of clusters")->required();
  clus.damping.add(cl);
  cl->add_option("--tol", clus.tol)->capture_default_str();
  cl->add_option("--seed", clus.seed)->capture_default_str();
  cl->add_option("--restarts", clus.restarts)->capture_default_str();
  cl->add_option("--max-iter", clus.max_iter)->capture_default_str();
  cl->add_option("--threads", clus.threads)->capture_default_str();
  cl->add_option("--truth", clus.truth, "'gml-value' or a file of 'label class' lines");
  clus.output.add(cl);

  WalkOptions walk;
  auto* w = app.add_subcommand("walk", "Monte Carlo estimate of mu-PageRank");
  w->add_option("--input", walk.input, "edge list or .gml file")->required();
  walk.damping.add(w);
  w->add_option("--mu", walk.mu)->capture_default_str();
  w->add_option("--steps", walk.steps)->capture_default_str();
  w->add_option("--seed", walk.seed)->capture_default_str();
  walk.output.add(w);

  ReplayOptions replay;
  auto* r = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  r->add_option("manifest", replay.manifest)->required();
  r->add_option("--out", replay.out, "write the CSV here instead of the recorded path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c) return run_compute(compute, args, out, err);
    if (*s) return run_sweep(sweep, args, out, err);
    if (*v) return run_verify(verify, args, out, err);
    if (*ov) return run_overlap(overlap, args, out, err);
    if (*cl) return run_cluster(clus, args, out, err);
    if (*w) return run_walk(walk, args, out, err);
    if (*r) return run(replay_args(replay), out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << "Run with --help for more information.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace nbpr::cli
