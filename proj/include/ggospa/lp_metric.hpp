#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ggospa/graph.hpp"
#include "ggospa/lp_solver.hpp"
#include "ggospa/metric.hpp"
#include "ggospa/params.hpp"

namespace ggospa {

/// Linear program for the relaxed metric together with the variable layout.
///
/// Variables, in order: the entries of W in row-major order with the corner
/// left out, the scalar e, the n_X x n_Y grid H, and for the directed form a
/// second scalar e2 and an n_Y x n_X grid H2. W >= 0, e >= 0, H and H2 free.
/// Rows: n_X row sums and n_Y column sums equal to 1, e >= sum H,
/// H >= +-(A_X W0 - W0 A_Y) entrywise, and for the directed form
/// e2 >= sum H2, H2 >= +-(A_Y W0^T - W0^T A_X).
struct LpEncoding {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t n_x = 0;
  std::size_t n_y = 0;
  bool directed = false;
  LpProblem problem;
  std::size_t e_hat = npos;
  std::size_t e_hat2 = npos;

  std::size_t num_w() const { return (n_x + 1) * (n_y + 1) - 1; }
  /// Index of W(i, j) for 0 <= i <= n_X, 0 <= j <= n_Y, except the corner.
  std::size_t w(std::size_t i, std::size_t j) const { return i * (n_y + 1) + j; }
  std::size_t h(std::size_t i, std::size_t j) const { return e_hat + 1 + i * n_y + j; }
  /// H2 is indexed (Y node, X node).
  std::size_t h2(std::size_t j, std::size_t i) const { return e_hat2 + 1 + j * n_x + i; }

  /// Human-readable names (w_i_j, e, h_i_j, e2, h2_j_i), 0-based.
  std::vector<std::string> variable_names() const;
};

LpEncoding build_lp(const ValidatedGraph& x, const ValidatedGraph& y,
                    const MetricParams& params, bool directed,
                    const MetricOptions& options = {});

/// Encoding over a prepared pair (cost matrix and adjacency already fixed).
LpEncoding build_lp(const PreparedPair& pair, const MetricParams& params);

/// LP relaxation of graph GOSPA. The value is the objective evaluated at the
/// returned W, so value^p equals the decomposition total. Throws
/// SolverFailure when the solver does not reach an optimum.
MetricResult lp_graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                            const MetricParams& params, const MetricOptions& options = {});
MetricResult lp_graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                            const MetricParams& params, bool directed,
                            const MetricOptions& options = {},
                            const LpSolver& solver = SimplexSolver());

/// Graph GOSPA with the base distance fixed to zero: node attributes are
/// ignored and only unassignment and edge structure count.
MetricResult pseudometric(const ValidatedGraph& x, const ValidatedGraph& y,
                          const MetricParams& params, bool directed,
                          SolveMode mode = SolveMode::Lp, MetricOptions options = {});

/// Dispatches to the exact or LP path.
MetricResult graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                         const MetricParams& params, SolveMode mode, bool directed,
                         const MetricOptions& options = {});

/// LP in CPLEX LP text format.
std::string lp_text(const LpEncoding& encoding);

}  // namespace ggospa
