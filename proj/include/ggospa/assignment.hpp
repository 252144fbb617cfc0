#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ggospa/graph.hpp"
#include "ggospa/matrix.hpp"
#include "ggospa/params.hpp"

namespace ggospa {

/// Assignment of the n_X nodes of X to nodes of Y. Targets are 1-based:
/// pi[i] = j > 0 assigns x_i to y_j, pi[i] = 0 leaves x_i unassigned.
struct AssignmentVector {
  std::vector<std::size_t> pi;

  std::size_t size() const noexcept { return pi.size(); }
  /// Entries within [0, n_y] and injective on nonzero entries.
  bool valid_for(std::size_t n_y) const;
  std::size_t assigned_count() const;

  friend bool operator==(const AssignmentVector&, const AssignmentVector&) = default;
};

/// (n_X+1) x (n_Y+1) assignment matrix. The last row and column absorb
/// unassigned nodes of Y and X respectively; the corner is always 0.
struct AssignmentMatrix {
  Matrix w;
  bool integral = true;

  std::size_t n_x() const noexcept { return w.rows() - 1; }
  std::size_t n_y() const noexcept { return w.cols() - 1; }
  /// Top-left n_X x n_Y block.
  Matrix core() const { return w.block(0, 0, n_x(), n_y()); }
};

/// Largest violation of the row/column-sum, corner and nonnegativity
/// constraints of a (relaxed) assignment matrix.
double constraint_violation(const Matrix& w);

/// True when every entry is within tol of 0 or 1.
bool is_integral(const Matrix& w, double tol = 1e-8);

AssignmentMatrix vector_to_matrix(const AssignmentVector& pi, std::size_t n_x,
                                  std::size_t n_y);

/// Inverse of vector_to_matrix. Throws NonIntegralMatrix for fractional
/// input and DimensionMismatch for integral input that is not an assignment.
AssignmentVector matrix_to_vector(const AssignmentMatrix& w);

/// Cost matrix with d(x_i, y_j)^p in the core, c^p / 2 on the border and 0
/// in the corner.
struct CostMatrix {
  Matrix d;
  double c = 0.0;
  double p = 1.0;

  std::size_t n_x() const noexcept { return d.rows() - 1; }
  std::size_t n_y() const noexcept { return d.cols() - 1; }
  double unassigned_cost() const;
};

CostMatrix cost_matrix(std::span<const std::vector<double>> vx,
                       std::span<const std::vector<double>> vy,
                       const BaseMetric& base, double c, double p);

/// Cost matrix over graph nodes. Attribute-free graphs must be paired with
/// a base metric that ignores its arguments (zero_metric()).
CostMatrix cost_matrix(const ValidatedGraph& x, const ValidatedGraph& y,
                       const BaseMetric& base, double c, double p);

/// GOSPA between node sets with its p-th power decomposition.
struct GospaResult {
  double value = 0.0;
  AssignmentVector assignment;
  double localisation_p = 0.0;
  double missed_p = 0.0;
  double false_p = 0.0;
};

/// Set GOSPA (alpha = 2) by an optimal 2-D assignment on the augmented
/// (n_X + n_Y) square cost matrix. Equals graph GOSPA with epsilon = 0.
GospaResult set_gospa(std::span<const std::vector<double>> vx,
                      std::span<const std::vector<double>> vy,
                      const BaseMetric& base, double c, double p);

/// set_gospa on precomputed costs.
GospaResult set_gospa(const CostMatrix& d);

/// Node attribute vectors of a graph (empty vectors when attribute-free).
std::vector<std::vector<double>> node_attributes(const ValidatedGraph& g);

}  // namespace ggospa
