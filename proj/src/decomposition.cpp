#include "ggospa/decomposition.hpp"

#include <cmath>

#include "ggospa/error.hpp"
#include "ggospa/metric.hpp"

namespace ggospa {

namespace {

void check_shapes(const Matrix& w, const Matrix& ax, const Matrix& ay) {
  if (w.rows() != ax.rows() + 1 || w.cols() != ay.rows() + 1 ||
      ax.rows() != ax.cols() || ay.rows() != ay.cols())
    throw Error(ErrorCode::DimensionMismatch,
                "assignment matrix is " + std::to_string(w.rows()) + "x" +
                    std::to_string(w.cols()) + " for graphs of sizes " +
                    std::to_string(ax.rows()) + " and " + std::to_string(ay.rows()));
}

// ||A_X W0 - W0 A_Y|| with W0 the core of w.
double mismatch_norm(const Matrix& w0, const Matrix& ax, const Matrix& ay) {
  return entrywise_l1(ax * w0 - w0 * ay);
}

}  // namespace

double edge_mismatch_matrix(const Matrix& w, const Matrix& ax, const Matrix& ay,
                            const MetricParams& params, bool directed) {
  check_shapes(w, ax, ay);
  const Matrix w0 = w.block(0, 0, ax.rows(), ay.rows());
  const double ep = power(params.epsilon, params.p);
  if (!directed) return ep / 2.0 * mismatch_norm(w0, ax, ay);
  const Matrix w0t = w0.transposed();
  return ep / 4.0 * (mismatch_norm(w0, ax, ay) + mismatch_norm(w0t, ay, ax));
}

Decomposition decompose(const Matrix& w, const CostMatrix& d, const Matrix& ax,
                        const Matrix& ay, const MetricParams& params, bool directed) {
  check_shapes(w, ax, ay);
  if (d.d.rows() != w.rows() || d.d.cols() != w.cols())
    throw Error(ErrorCode::DimensionMismatch, "cost and assignment matrices differ in shape");
  const std::size_t nx = ax.rows();
  const std::size_t ny = ay.rows();
  Decomposition out;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) out.localisation_p += d.d(i, j) * w(i, j);
  double missed_mass = 0.0;
  for (std::size_t i = 0; i < nx; ++i) missed_mass += w(i, ny);
  double false_mass = 0.0;
  for (std::size_t j = 0; j < ny; ++j) false_mass += w(nx, j);
  const double half = d.unassigned_cost();
  out.missed_p = half * missed_mass;
  out.false_p = half * false_mass;
  out.edge_p = edge_mismatch_matrix(w, ax, ay, params, directed);
  return out;
}

double objective_p(const Matrix& w, const CostMatrix& d, const Matrix& ax,
                   const Matrix& ay, const MetricParams& params, bool directed) {
  return decompose(w, d, ax, ay, params, directed).total_p();
}

Decomposition decompose(const AssignmentMatrix& w, const ValidatedGraph& x,
                        const ValidatedGraph& y, const MetricParams& params,
                        bool directed, const MetricOptions& options) {
  const PreparedPair pair = prepare_pair(x, y, params, options, directed);
  return decompose(w.w, pair.d, *pair.ax, *pair.ay, params, directed);
}

}  // namespace ggospa
