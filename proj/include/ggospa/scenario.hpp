#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ggospa/graph.hpp"
#include "ggospa/matrix.hpp"
#include "ggospa/metric.hpp"
#include "ggospa/params.hpp"

namespace ggospa {

/// Perturbations applied to a ground-truth graph. The level is a noise
/// variance for AttrNoise and a probability for the others.
enum class Scenario { AttrNoise, EdgeAdd, EdgeDelete, NodeRemove };

/// "attr_noise", "edge_add", "edge_delete", "node_remove".
std::string_view to_string(Scenario s);
/// Inverse of to_string. Throws InvalidConfig.
Scenario parse_scenario(std::string_view name);

/// splitmix64 finalizer applied to seed mixed with two stream counters.
/// Every (seed, a, b) triple gets an independent mt19937_64 stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

using Rng = std::mt19937_64;
using AttrSampler = std::function<std::vector<double>(Rng&)>;

/// 2-D attributes uniform in [0, box]^2.
AttrSampler uniform_box(double box = 10.0);

/// Undirected, unweighted G(n, p_edge) graph with attributes from sampler
/// (attribute-free when sampler is empty).
ValidatedGraph erdos_renyi(std::size_t n, double p_edge, std::uint64_t seed,
                           const AttrSampler& sampler = uniform_box());

/// Throws InvalidLevel unless level >= 0 (AttrNoise) or level in [0, 1].
void check_level(Scenario scenario, double level);

/// Perturbed copy of g. AttrNoise adds N(0, level I) to attributes. EdgeAdd
/// adds each absent pair with probability level, EdgeDelete drops each edge
/// with probability level, NodeRemove drops each node and its edges with
/// probability level; these three also add N(0, noise_var I) attribute
/// noise at every level.
ValidatedGraph perturb(const ValidatedGraph& g, Scenario scenario, double level,
                       std::uint64_t seed, double noise_var = 0.1);

struct ScenarioConfig {
  Scenario scenario = Scenario::AttrNoise;
  std::vector<double> levels;
  std::size_t runs = 100;
  std::size_t n = 10;
  double p_edge = 0.4;
  std::uint64_t seed = 0;
  MetricParams params;
  SolveMode mode = SolveMode::Lp;
  /// Side of the square the base graph attributes are drawn from.
  double box = 10.0;
  double noise_var = 0.1;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Throws InvalidConfig or InvalidLevel.
void check_config(const ScenarioConfig& config);

/// Reads the JSON object
///   {"scenario": "attr_noise", "levels": [..], "runs": 200, "n": 10,
///    "p_edge": 0.4, "seed": 1, "c": 3, "epsilon": 1, "p": 1,
///    "mode": "lp" | "exact", "box": 10, "noise_var": 0.1, "threads": 0}
/// where only scenario and levels are required. Throws InvalidConfig on
/// malformed input and unknown keys, InvalidLevel on bad levels.
ScenarioConfig parse_scenario_config(std::string_view text);

struct CurvePoint {
  double level = 0.0;
  double mean_total = 0.0;
  double mean_loc = 0.0;
  double mean_missed = 0.0;
  double mean_false = 0.0;
  double mean_edge = 0.0;
  /// Standard error of mean_total; 0 with fewer than two samples.
  double stderr_total = 0.0;
  std::size_t samples = 0;
  std::size_t failures = 0;
};

struct CurveData {
  std::vector<CurvePoint> points;

  std::size_t failures() const;
};

/// Monte-Carlo sweep. One base graph X is drawn from the config seed; every
/// (level, run) pair perturbs X with its own derived seed and evaluates the
/// metric between X and the copy. Means of the components are p-th powers.
/// Solver failures are counted per level and left out of the means. The
/// result does not depend on the thread count.
CurveData run_scenario(const ScenarioConfig& config);

/// level,mean_total,mean_loc,mean_missed,mean_false,mean_edge,stderr_total
/// with 9 significant digits.
std::string curve_csv(const CurveData& curve);

/// Pairwise metric matrix: symmetric with a zero diagonal. Each unordered
/// pair is solved once. The directed formula is used for directed graphs or
/// when `directed` is set. Errors from any pair propagate.
Matrix distance_matrix(const std::vector<ValidatedGraph>& graphs,
                       const MetricParams& params, SolveMode mode = SolveMode::Lp,
                       const MetricOptions& options = {}, unsigned threads = 0,
                       bool directed = false);

/// Rows of comma-separated values with 9 significant digits.
std::string matrix_csv(const Matrix& m);

/// Runs task(i) for i in [0, count) on up to `threads` workers (0 for the
/// hardware concurrency). The first exception thrown is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task);

}  // namespace ggospa
