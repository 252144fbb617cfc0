#pragma once

#include "ggospa/assignment.hpp"
#include "ggospa/graph.hpp"
#include "ggospa/matrix.hpp"
#include "ggospa/params.hpp"

namespace ggospa {

/// Split of a metric value into its four cost components, each already
/// raised to the p-th power. For fractional assignment matrices the
/// components are soft-assignment costs.
struct Decomposition {
  double localisation_p = 0.0;
  double missed_p = 0.0;
  double false_p = 0.0;
  double edge_p = 0.0;

  double total_p() const { return localisation_p + missed_p + false_p + edge_p; }
  /// (total_p)^(1/p).
  double value(double p) const { return root(total_p(), p); }
};

/// Edge mismatch cost e(W)^p from the matrix form. Undirected:
/// (eps^p/2) ||A_X W0 - W0 A_Y||. Directed: (eps^p/4) (||A_X W0 - W0 A_Y|| +
/// ||A_Y W0^T - W0^T A_X||). W0 is the top-left n_X x n_Y block of w.
double edge_mismatch_matrix(const Matrix& w, const Matrix& ax, const Matrix& ay,
                            const MetricParams& params, bool directed);

/// tr(D^T W) + e(W)^p: the inner objective at an arbitrary (relaxed)
/// assignment matrix.
double objective_p(const Matrix& w, const CostMatrix& d, const Matrix& ax,
                   const Matrix& ay, const MetricParams& params, bool directed);

Decomposition decompose(const Matrix& w, const CostMatrix& d, const Matrix& ax,
                        const Matrix& ay, const MetricParams& params, bool directed);

}  // namespace ggospa
