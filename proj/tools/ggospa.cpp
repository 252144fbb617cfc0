// ggospa: graph GOSPA distances, decompositions, scenario sweeps, distance
// matrices and random graphs from the command line.
//
// Exit codes: 0 success, 2 input or validation error, 3 solver failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ggospa/assignment.hpp"
#include "ggospa/error.hpp"
#include "ggospa/graph_io.hpp"
#include "ggospa/lp_metric.hpp"
#include "ggospa/scenario.hpp"

namespace {

using nlohmann::json;
using namespace ggospa;

constexpr int kSchemaVersion = 1;
constexpr int kInputError = 2;
constexpr int kSolverError = 3;

struct Common {
  MetricParams params;
  std::string mode = "lp";
  bool directed = false;
  bool no_attributes = false;
  std::string output;
  unsigned threads = 0;
};

void add_metric_flags(CLI::App& cmd, Common& opts) {
  cmd.add_option("--c", opts.params.c, "Unassignment cost scale")->capture_default_str();
  cmd.add_option("--epsilon", opts.params.epsilon, "Edge mismatch penalty")
      ->capture_default_str();
  cmd.add_option("--p", opts.params.p, "Exponent, 1 <= p < inf")->capture_default_str();
  cmd.add_option("--mode", opts.mode, "Solver path")
      ->check(CLI::IsMember({"lp", "exact"}))
      ->capture_default_str();
  cmd.add_flag("--no-attributes", opts.no_attributes,
               "Ignore node attributes (pseudometric)");
}

SolveMode solve_mode(const std::string& mode) {
  return mode == "exact" ? SolveMode::Exact : SolveMode::Lp;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Directedness and weightedness must agree; the library checks the rest.
void check_pair(const ValidatedGraph& a, const ValidatedGraph& b, const std::string& name_a,
                const std::string& name_b) {
  if (a.directed() != b.directed())
    throw Error(ErrorCode::ModeMismatch, name_a + " and " + name_b + " differ in directedness");
  if (a.weighted() != b.weighted())
    throw Error(ErrorCode::ModeMismatch, name_a + " and " + name_b + " differ in weightedness");
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Matrix parse_matrix(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (doc.is_object() && doc.contains("assignment")) doc = doc["assignment"];
  if (!doc.is_array() || doc.empty() || !doc[0].is_array())
    throw Error(ErrorCode::ParseError, "assignment must be an array of rows");
  Matrix m(doc.size(), doc[0].size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_array() || doc[i].size() != m.cols())
      throw Error(ErrorCode::ParseError, "assignment rows must have equal length");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!doc[i][j].is_number())
        throw Error(ErrorCode::ParseError, "assignment entries must be numbers");
      m(i, j) = doc[i][j].get<double>();
    }
  }
  return m;
}

json result_json(double value, const Decomposition& parts, SolveMode mode, bool integral,
                 bool directed) {
  return {{"schema_version", kSchemaVersion},
          {"value", value},
          {"mode", mode == SolveMode::Exact ? "exact" : "lp"},
          {"integral", integral},
          {"directed", directed},
          {"decomposition",
           {{"loc_p", parts.localisation_p},
            {"missed_p", parts.missed_p},
            {"false_p", parts.false_p},
            {"edge_p", parts.edge_p}}}};
}

struct PairArgs {
  std::string a;
  std::string b;
  std::string dump_lp;
  std::string assignment;
};

int cmd_compute(const Common& opts, const PairArgs& args, bool with_assignment) {
  const ValidatedGraph x = read_graph_file(args.a);
  const ValidatedGraph y = read_graph_file(args.b);
  check_pair(x, y, args.a, args.b);
  check_params(opts.params);
  const bool directed = opts.directed || x.directed();
  MetricOptions options;
  options.ignore_attributes = opts.no_attributes;

  if (!args.dump_lp.empty())
    emit(lp_text(build_lp(x, y, opts.params, directed, options)), args.dump_lp);

  json out;
  if (!args.assignment.empty()) {
    AssignmentMatrix w;
    w.w = parse_matrix(read_text(args.assignment));
    if (w.w.rows() != x.size() + 1 || w.w.cols() != y.size() + 1)
      throw Error(ErrorCode::DimensionMismatch, "assignment shape does not match the graphs");
    if (constraint_violation(w.w) > 1e-9)
      throw Error(ErrorCode::DimensionMismatch, "not a (relaxed) assignment matrix");
    w.integral = is_integral(w.w);
    const Decomposition parts = decompose(w, x, y, opts.params, directed, options);
    out = result_json(parts.value(opts.params.p), parts, solve_mode(opts.mode), w.integral,
                      directed);
    out["assignment"] = matrix_json(w.w);
  } else {
    const MetricResult r =
        graph_gospa(x, y, opts.params, solve_mode(opts.mode), directed, options);
    out = result_json(r.value, r.decomposition, r.mode, r.integral, r.directed);
    if (with_assignment) out["assignment"] = matrix_json(r.assignment.w);
  }
  emit(out.dump(2) + "\n", opts.output);
  return 0;
}

int cmd_bench(const Common& opts, const std::string& config_path, const std::string& seed) {
  ScenarioConfig config = parse_scenario_config(read_text(config_path));
  if (!seed.empty()) {
    try {
      config.seed = std::stoull(seed);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, "--seed must be a non-negative integer");
    }
  }
  if (opts.threads > 0) config.threads = opts.threads;
  const CurveData curve = run_scenario(config);
  emit(curve_csv(curve), opts.output);
  (opts.output.empty() ? std::cerr : std::cout)
      << "bench " << to_string(config.scenario) << ": " << config.levels.size()
      << " levels x " << config.runs << " runs, " << curve.failures() << " solver failures"
      << (opts.output.empty() ? "" : ", wrote " + opts.output) << "\n";
  return 0;
}

int cmd_matrix(const Common& opts, const std::vector<std::string>& files) {
  std::vector<ValidatedGraph> graphs;
  for (const std::string& f : files) {
    graphs.push_back(read_graph_file(f));
    check_pair(graphs.front(), graphs.back(), files.front(), f);
  }
  check_params(opts.params);
  MetricOptions options;
  options.ignore_attributes = opts.no_attributes;
  const bool directed = opts.directed || graphs.front().directed();
  const Matrix m =
      distance_matrix(graphs, opts.params, solve_mode(opts.mode), options, opts.threads, directed);
  emit(matrix_csv(m), opts.output);
  return 0;
}

int cmd_gen(const Common& opts, std::size_t n, double p_edge, std::uint64_t seed, double box) {
  if (!(box > 0.0)) throw Error(ErrorCode::InvalidParams, "--box must be positive");
  const ValidatedGraph g =
      erdos_renyi(n, p_edge, seed, opts.no_attributes ? AttrSampler{} : uniform_box(box));
  emit(write_graph_json(g, 2) + "\n", opts.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph GOSPA metric between attributed graphs"};
  app.set_version_flag("--version", "ggospa 1.0");
  bool schema = false;
  app.add_flag("--schema-version", schema, "Print the JSON output schema version");
  app.require_subcommand(0, 1);

  Common opts;
  PairArgs pair;

  auto* compute = app.add_subcommand("compute", "Metric between two graph files");
  compute->add_option("a", pair.a, "First graph (JSON)")->required();
  compute->add_option("b", pair.b, "Second graph (JSON)")->required();
  add_metric_flags(*compute, opts);
  compute->add_flag("--directed", opts.directed,
                    "Use the directed formula (implied by directed files)");
  compute->add_option("--output", opts.output, "Write JSON here instead of stdout");
  compute->add_option("--dump-lp", pair.dump_lp, "Write the linear program (LP format)");

  auto* decomp = app.add_subcommand(
      "decompose", "Metric decomposition with the optimal assignment matrix");
  decomp->add_option("a", pair.a, "First graph (JSON)")->required();
  decomp->add_option("b", pair.b, "Second graph (JSON)")->required();
  add_metric_flags(*decomp, opts);
  decomp->add_flag("--directed", opts.directed,
                   "Use the directed formula (implied by directed files)");
  decomp->add_option("--assignment", pair.assignment,
                     "Evaluate at this assignment matrix (JSON rows) instead of optimizing");
  decomp->add_option("--output", opts.output, "Write JSON here instead of stdout");

  std::string config_path;
  std::string bench_seed;
  auto* bench = app.add_subcommand("bench", "Monte-Carlo perturbation sweep");
  bench->add_option("config", config_path, "Scenario config (JSON)")->required();
  bench->add_option("--seed", bench_seed, "Override the config seed");
  bench->add_option("--threads", opts.threads, "Worker threads (0: all cores)");
  bench->add_option("--output", opts.output, "Write CSV here instead of stdout");

  std::vector<std::string> files;
  auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix as CSV");
  matrix->add_option("graphs", files, "Graph files (JSON)")->required();
  add_metric_flags(*matrix, opts);
  matrix->add_flag("--directed", opts.directed,
                   "Use the directed formula (implied by directed files)");
  matrix->add_option("--threads", opts.threads, "Worker threads (0: all cores)");
  matrix->add_option("--output", opts.output, "Write CSV here instead of stdout");

  std::size_t gen_n = 10;
  double gen_p = 0.4;
  std::uint64_t gen_seed = 0;
  double gen_box = 10.0;
  auto* gen = app.add_subcommand("gen", "Random Erdos-Renyi graph as JSON");
  gen->add_option("--n", gen_n, "Node count")->capture_default_str();
  gen->add_option("--p-edge", gen_p, "Edge probability")->capture_default_str();
  gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
  gen->add_option("--box", gen_box, "Attributes uniform in [0, box]^2")->capture_default_str();
  gen->add_flag("--no-attributes", opts.no_attributes, "Attribute-free nodes");
  gen->add_option("--output", opts.output, "Write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (schema) {
      std::cout << kSchemaVersion << "\n";
      return 0;
    }
    if (compute->parsed()) return cmd_compute(opts, pair, false);
    if (decomp->parsed()) return cmd_compute(opts, pair, true);
    if (bench->parsed()) return cmd_bench(opts, config_path, bench_seed);
    if (matrix->parsed()) return cmd_matrix(opts, files);
    if (gen->parsed()) return cmd_gen(opts, gen_n, gen_p, gen_seed, gen_box);
    std::cerr << app.help();
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "ggospa: " << e.what() << "\n";
    return e.code() == ErrorCode::SolverFailure ? kSolverError : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "ggospa: " << e.what() << "\n";
    return kInputError;
  }
}
