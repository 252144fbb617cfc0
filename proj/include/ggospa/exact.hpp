#pragma once

#include <cstddef>

#include "ggospa/assignment.hpp"
#include "ggospa/graph.hpp"
#include "ggospa/matrix.hpp"
#include "ggospa/metric.hpp"
#include "ggospa/params.hpp"

namespace ggospa {

/// Edge mismatch cost e(pi)^p by counting over an assignment vector.
///
/// Undirected: eps^p/2 per ordered pair of assigned X nodes whose edge value
/// differs from the image pair in Y (so eps^p per unordered mismatch), plus
/// eps^p/2 per edge joining an assigned and an unassigned node in either
/// graph. Directed: eps^p/2 per mismatched ordered assigned pair and eps^p/4
/// per directed edge touching one unassigned node. Weighted graphs
/// contribute |weight difference| instead of 1.
double edge_mismatch_count(const AssignmentVector& pi, const Matrix& ax,
                           const Matrix& ay, const MetricParams& params,
                           bool directed = false);

/// Number of assignment vectors between sets of sizes n_x and n_y:
/// sum_k C(n_x,k) C(n_y,k) k!.
double assignment_count(std::size_t n_x, std::size_t n_y);

/// Graph GOSPA by exhaustive enumeration of assignment vectors. Ties go to
/// the first optimum in lexicographic pi order. The directed overload
/// selects the edge cost formula; directed graphs require directed = true.
/// Throws ModeMismatch or EnumerationCapExceeded.
MetricResult exact_graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                               const MetricParams& params,
                               const MetricOptions& options = {});
MetricResult exact_graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                               const MetricParams& params, bool directed,
                               const MetricOptions& options = {});

/// Composition of assignments X->Z and Z->Y: the core is the product of the
/// cores and the borders restore the row/column sums.
AssignmentMatrix compose_assignments(const AssignmentMatrix& w_xz,
                                     const AssignmentMatrix& w_zy);

}  // namespace ggospa
