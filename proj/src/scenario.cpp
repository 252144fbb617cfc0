#include "ggospa/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "ggospa/error.hpp"
#include "ggospa/exact.hpp"
#include "ggospa/lp_metric.hpp"
#include "ggospa/summation.hpp"

namespace ggospa {

namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(ErrorCode::InvalidConfig, what);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream ids reserved for the base graph; perturbations use (level, run).
constexpr std::uint64_t kBaseStream = ~std::uint64_t{0};

void add_noise(std::vector<Node>& nodes, double variance, Rng& rng) {
  if (variance <= 0.0) return;
  std::normal_distribution<double> noise(0.0, std::sqrt(variance));
  for (Node& node : nodes)
    if (node.attr)
      for (double& a : *node.attr) a += noise(rng);
}

std::string format_g9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double number_field(const json& v, const char* key) {
  if (!v.is_number()) bad_config(std::string("field ") + key + " must be a number");
  return v.get<double>();
}

std::uint64_t count_field(const json& v, const char* key) {
  if (!v.is_number_unsigned())
    bad_config(std::string("field ") + key + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::AttrNoise: return "attr_noise";
    case Scenario::EdgeAdd: return "edge_add";
    case Scenario::EdgeDelete: return "edge_delete";
    case Scenario::NodeRemove: return "node_remove";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  for (Scenario s : {Scenario::AttrNoise, Scenario::EdgeAdd, Scenario::EdgeDelete,
                     Scenario::NodeRemove})
    if (to_string(s) == name) return s;
  bad_config("unknown scenario '" + std::string(name) + "'");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

AttrSampler uniform_box(double box) {
  return [box](Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, box);
    const double x = u(rng);
    const double y = u(rng);
    return std::vector<double>{x, y};
  };
}

ValidatedGraph erdos_renyi(std::size_t n, double p_edge, std::uint64_t seed,
                           const AttrSampler& sampler) {
  if (!(p_edge >= 0.0 && p_edge <= 1.0))
    throw Error(ErrorCode::InvalidParams, "edge probability must lie in [0, 1]");
  Rng rng(seed);
  Graph g;
  g.nodes.resize(n);
  if (sampler)
    for (Node& node : g.nodes) node.attr = sampler(rng);
  std::bernoulli_distribution coin(p_edge);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) g.edges.push_back({u, v, 1.0});
  return validate(std::move(g));
}

void check_level(Scenario scenario, double level) {
  if (!std::isfinite(level) || level < 0.0)
    throw Error(ErrorCode::InvalidLevel, "level must be finite and non-negative");
  if (scenario != Scenario::AttrNoise && level > 1.0)
    throw Error(ErrorCode::InvalidLevel, "probability level must lie in [0, 1]");
}

ValidatedGraph perturb(const ValidatedGraph& g, Scenario scenario, double level,
                       std::uint64_t seed, double noise_var) {
  check_level(scenario, level);
  Rng rng(seed);
  Graph out = g.graph();
  std::bernoulli_distribution coin(level);

  switch (scenario) {
    case Scenario::AttrNoise:
      add_noise(out.nodes, level, rng);
      break;
    case Scenario::EdgeAdd: {
      const Matrix& a = g.adjacency();
      const std::size_t n = g.size();
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = g.directed() ? 0 : u + 1; v < n; ++v)
          if (u != v && a(u, v) == 0.0 && coin(rng)) out.edges.push_back({u, v, 1.0});
      add_noise(out.nodes, noise_var, rng);
      break;
    }
    case Scenario::EdgeDelete: {
      std::vector<Edge> kept;
      for (const Edge& e : out.edges)
        if (!coin(rng)) kept.push_back(e);
      out.edges = std::move(kept);
      add_noise(out.nodes, noise_var, rng);
      break;
    }
    case Scenario::NodeRemove: {
      constexpr std::size_t gone = static_cast<std::size_t>(-1);
      std::vector<std::size_t> index(out.nodes.size(), gone);
      std::vector<Node> kept;
      for (std::size_t i = 0; i < out.nodes.size(); ++i)
        if (!coin(rng)) {
          index[i] = kept.size();
          kept.push_back(out.nodes[i]);
        }
      std::vector<Edge> edges;
      for (const Edge& e : out.edges)
        if (index[e.u] != gone && index[e.v] != gone)
          edges.push_back({index[e.u], index[e.v], e.weight});
      out.nodes = std::move(kept);
      out.edges = std::move(edges);
      add_noise(out.nodes, noise_var, rng);
      break;
    }
  }
  return validate(std::move(out));
}

void check_config(const ScenarioConfig& config) {
  if (config.runs < 1) bad_config("runs must be at least 1");
  if (config.levels.empty()) bad_config("levels must not be empty");
  for (double level : config.levels) check_level(config.scenario, level);
  if (!(config.p_edge >= 0.0 && config.p_edge <= 1.0))
    bad_config("p_edge must lie in [0, 1]");
  if (!(std::isfinite(config.box) && config.box > 0.0)) bad_config("box must be positive");
  if (!(std::isfinite(config.noise_var) && config.noise_var >= 0.0))
    bad_config("noise_var must be non-negative");
  try {
    check_params(config.params);
  } catch (const Error& e) {
    bad_config(e.what());
  }
  if (config.mode == SolveMode::Exact &&
      assignment_count(config.n, config.n) > MetricOptions{}.enumeration_cap)
    bad_config("n too large for the exact metric");
}

ScenarioConfig parse_scenario_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    bad_config(e.what());
  }
  if (!doc.is_object()) bad_config("config must be a JSON object");

  ScenarioConfig config;
  bool have_scenario = false;
  bool have_levels = false;
  for (const auto& [key, v] : doc.items()) {
    if (key == "scenario") {
      if (!v.is_string()) bad_config("field scenario must be a string");
      config.scenario = parse_scenario(v.get<std::string>());
      have_scenario = true;
    } else if (key == "levels") {
      if (!v.is_array()) bad_config("field levels must be an array");
      for (const json& l : v) config.levels.push_back(number_field(l, "levels"));
      have_levels = true;
    } else if (key == "runs") {
      config.runs = count_field(v, "runs");
    } else if (key == "n") {
      config.n = count_field(v, "n");
    } else if (key == "seed") {
      config.seed = count_field(v, "seed");
    } else if (key == "threads") {
      config.threads = static_cast<unsigned>(count_field(v, "threads"));
    } else if (key == "p_edge") {
      config.p_edge = number_field(v, "p_edge");
    } else if (key == "c") {
      config.params.c = number_field(v, "c");
    } else if (key == "epsilon") {
      config.params.epsilon = number_field(v, "epsilon");
    } else if (key == "p") {
      config.params.p = number_field(v, "p");
    } else if (key == "box") {
      config.box = number_field(v, "box");
    } else if (key == "noise_var") {
      config.noise_var = number_field(v, "noise_var");
    } else if (key == "mode") {
      const std::string m = v.is_string() ? v.get<std::string>() : "";
      if (m == "lp") config.mode = SolveMode::Lp;
      else if (m == "exact") config.mode = SolveMode::Exact;
      else bad_config("field mode must be \"lp\" or \"exact\"");
    } else {
      bad_config("unknown field " + key);
    }
  }
  if (!have_scenario) bad_config("missing field scenario");
  if (!have_levels) bad_config("missing field levels");
  check_config(config);
  return config;
}

std::size_t CurveData::failures() const {
  std::size_t f = 0;
  for (const CurvePoint& p : points) f += p.failures;
  return f;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

CurveData run_scenario(const ScenarioConfig& config) {
  check_config(config);
  const ValidatedGraph x = erdos_renyi(config.n, config.p_edge,
                                       derive_seed(config.seed, kBaseStream, 0),
                                       uniform_box(config.box));

  struct Sample {
    bool ok = false;
    double total = 0.0;
    Decomposition parts;
  };
  const std::size_t runs = config.runs;
  std::vector<Sample> samples(config.levels.size() * runs);

  parallel_for(samples.size(), config.threads, [&](std::size_t k) {
    const std::size_t level = k / runs;
    const std::size_t run = k % runs;
    const ValidatedGraph y = perturb(x, config.scenario, config.levels[level],
                                     derive_seed(config.seed, level, run),
                                     config.noise_var);
    try {
      const MetricResult r = graph_gospa(x, y, config.params, config.mode, x.directed());
      samples[k] = {true, r.value, r.decomposition};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SolverFailure) throw;
    }
  });

  CurveData curve;
  for (std::size_t level = 0; level < config.levels.size(); ++level) {
    CurvePoint point;
    point.level = config.levels[level];
    std::vector<double> total, loc, missed, fals, edge;
    for (std::size_t run = 0; run < runs; ++run) {
      const Sample& s = samples[level * runs + run];
      if (!s.ok) {
        ++point.failures;
        continue;
      }
      total.push_back(s.total);
      loc.push_back(s.parts.localisation_p);
      missed.push_back(s.parts.missed_p);
      fals.push_back(s.parts.false_p);
      edge.push_back(s.parts.edge_p);
    }
    point.samples = total.size();
    if (point.samples > 0) {
      const double m = static_cast<double>(point.samples);
      point.mean_total = pairwise_sum(total) / m;
      point.mean_loc = pairwise_sum(loc) / m;
      point.mean_missed = pairwise_sum(missed) / m;
      point.mean_false = pairwise_sum(fals) / m;
      point.mean_edge = pairwise_sum(edge) / m;
      if (point.samples > 1) {
        std::vector<double> sq;
        sq.reserve(total.size());
        for (double t : total) sq.push_back((t - point.mean_total) * (t - point.mean_total));
        point.stderr_total = std::sqrt(pairwise_sum(sq) / (m - 1.0) / m);
      }
    }
    curve.points.push_back(point);
  }
  return curve;
}

std::string curve_csv(const CurveData& curve) {
  std::string out = "level,mean_total,mean_loc,mean_missed,mean_false,mean_edge,stderr_total\n";
  for (const CurvePoint& p : curve.points) {
    for (double v : {p.level, p.mean_total, p.mean_loc, p.mean_missed, p.mean_false,
                     p.mean_edge}) {
      out += format_g9(v);
      out += ',';
    }
    out += format_g9(p.stderr_total);
    out += '\n';
  }
  return out;
}

Matrix distance_matrix(const std::vector<ValidatedGraph>& graphs,
                       const MetricParams& params, SolveMode mode,
                       const MetricOptions& options, unsigned threads, bool directed) {
  const std::size_t n = graphs.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  Matrix m(n, n);
  if (n > 0 && graphs.front().directed()) directed = true;
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const double v = graph_gospa(graphs[i], graphs[j], params, mode, directed, options).value;
    m(i, j) = v;
    m(j, i) = v;
  });
  return m;
}

std::string matrix_csv(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_g9(m(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace ggospa
