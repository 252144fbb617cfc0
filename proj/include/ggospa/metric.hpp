#pragma once

#include <cstddef>
#include <optional>

#include "ggospa/assignment.hpp"
#include "ggospa/decomposition.hpp"
#include "ggospa/graph.hpp"
#include "ggospa/params.hpp"

namespace ggospa {

enum class SolveMode { Exact, Lp };

struct MetricOptions {
  /// Distance between attribute vectors; ignored for attribute-free graphs.
  BaseMetric base = euclidean_metric();
  /// Treat both graphs as attribute-free (pseudometric semantics).
  bool ignore_attributes = false;
  /// Upper bound on the number of assignment vectors the exact path may
  /// enumerate (n_X = n_Y = 8 needs 1,441,729).
  double enumeration_cap = 2.0e6;
};

struct MetricResult {
  double value = 0.0;
  AssignmentMatrix assignment;
  Decomposition decomposition;
  SolveMode mode = SolveMode::Exact;
  bool directed = false;
  /// Optimal W is binary (always true on the exact path).
  bool integral = true;
};

/// Edge costs, base distances and formula choice for one (X, Y) pair after
/// mode checks.
struct PreparedPair {
  CostMatrix d;
  const Matrix* ax = nullptr;
  const Matrix* ay = nullptr;
  bool directed = false;
};

/// Checks that X and Y are compatible and builds the cost matrix. Throws
/// ModeMismatch when directedness or attribute presence/dimension differ,
/// or when directed graphs are requested through the undirected formula.
PreparedPair prepare_pair(const ValidatedGraph& x, const ValidatedGraph& y,
                          const MetricParams& params, const MetricOptions& options,
                          bool directed);

/// Decomposition of the cost of assignment matrix W between graphs X and Y.
/// Throws DimensionMismatch when W does not match the graph sizes.
Decomposition decompose(const AssignmentMatrix& w, const ValidatedGraph& x,
                        const ValidatedGraph& y, const MetricParams& params,
                        bool directed, const MetricOptions& options = {});

}  // namespace ggospa
