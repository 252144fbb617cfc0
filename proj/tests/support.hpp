#pragma once

// Test-only oracles and generators. Everything here is written against the
// definitions directly (edge lists, explicit enumeration) and shares no code
// path with the library routines it checks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ggospa/graph.hpp"
#include "ggospa/lp_solver.hpp"
#include "ggospa/params.hpp"

namespace ggospa::test {

using Rng = std::mt19937_64;

struct GraphShape {
  std::size_t n = 4;
  double p_edge = 0.4;
  bool directed = false;
  bool weighted = false;
  bool attributes = true;
  double box = 4.0;
};

/// Random graph for property tests. Weights are drawn from a small set of
/// nonzero values (negative included); weighted graphs may carry self-loops.
ValidatedGraph random_graph(Rng& rng, const GraphShape& shape);

/// Random shape with n in [0, max_n] and the given mode flags.
GraphShape random_shape(Rng& rng, std::size_t max_n, bool directed, bool weighted);

/// Directed copy of an undirected graph: every edge in both directions.
ValidatedGraph as_directed(const ValidatedGraph& g);

/// Fixture graph from tests/fixtures.
ValidatedGraph fixture(const std::string& name);

struct BruteForce {
  double value_p = 0.0;
  std::vector<std::size_t> pi;  // 1-based targets, 0 = unassigned
};

/// Counting-form graph GOSPA (p-th power) of one assignment, from edge lists.
double counting_objective_p(const ValidatedGraph& x, const ValidatedGraph& y,
                            const std::vector<std::size_t>& pi, const MetricParams& params,
                            bool directed, bool ignore_attributes = false);

/// Minimum of counting_objective_p over every assignment vector.
BruteForce brute_force_graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                                   const MetricParams& params, bool directed,
                                   bool ignore_attributes = false);

/// Every assignment vector between sets of sizes n_x and n_y.
std::vector<std::vector<std::size_t>> all_assignments(std::size_t n_x, std::size_t n_y);

/// Set GOSPA (p-th power) by enumeration, Euclidean base metric.
double brute_force_set_gospa_p(const std::vector<std::vector<double>>& vx,
                               const std::vector<std::vector<double>>& vy, double c,
                               double p);

/// Optimum of a bounded, feasible LP by enumerating basic solutions. Every
/// variable needs a finite lower bound or a free direction that is pinned
/// by constraints. Returns nullopt when no vertex is feasible.
std::optional<double> vertex_enumeration(const LpProblem& lp, double tol = 1e-9);

}  // namespace ggospa::test
