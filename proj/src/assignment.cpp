#include "ggospa/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ggospa/error.hpp"
#include "ggospa/linear_assignment.hpp"
#include "ggospa/summation.hpp"

namespace ggospa {

bool AssignmentVector::valid_for(std::size_t n_y) const {
  std::vector<bool> taken(n_y + 1, false);
  for (std::size_t j : pi) {
    if (j > n_y) return false;
    if (j == 0) continue;
    if (taken[j]) return false;
    taken[j] = true;
  }
  return true;
}

std::size_t AssignmentVector::assigned_count() const {
  return static_cast<std::size_t>(std::count_if(pi.begin(), pi.end(),
                                                [](std::size_t j) { return j != 0; }));
}

double constraint_violation(const Matrix& w) {
  if (w.rows() == 0 || w.cols() == 0) return 0.0;
  const std::size_t nx = w.rows() - 1;
  const std::size_t ny = w.cols() - 1;
  double worst = std::abs(w(nx, ny));
  for (double v : w.data()) worst = std::max(worst, -v);
  for (std::size_t i = 0; i < nx; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j <= ny; ++j) s += w(i, j);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  for (std::size_t j = 0; j < ny; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i <= nx; ++i) s += w(i, j);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

bool is_integral(const Matrix& w, double tol) {
  return std::all_of(w.data().begin(), w.data().end(), [tol](double v) {
    return std::abs(v) <= tol || std::abs(v - 1.0) <= tol;
  });
}

AssignmentMatrix vector_to_matrix(const AssignmentVector& pi, std::size_t n_x,
                                  std::size_t n_y) {
  if (pi.size() != n_x)
    throw Error(ErrorCode::DimensionMismatch,
                "assignment vector has length " + std::to_string(pi.size()) +
                    ", expected " + std::to_string(n_x));
  if (!pi.valid_for(n_y))
    throw Error(ErrorCode::DimensionMismatch, "assignment vector is not injective or out of range");
  AssignmentMatrix out{Matrix(n_x + 1, n_y + 1), true};
  std::vector<bool> taken(n_y, false);
  for (std::size_t i = 0; i < n_x; ++i) {
    if (pi.pi[i] == 0) {
      out.w(i, n_y) = 1.0;
    } else {
      out.w(i, pi.pi[i] - 1) = 1.0;
      taken[pi.pi[i] - 1] = true;
    }
  }
  for (std::size_t j = 0; j < n_y; ++j)
    if (!taken[j]) out.w(n_x, j) = 1.0;
  return out;
}

AssignmentVector matrix_to_vector(const AssignmentMatrix& w) {
  if (!w.integral || !is_integral(w.w, 0.0))
    throw Error(ErrorCode::NonIntegralMatrix, "assignment matrix has fractional entries");
  if (constraint_violation(w.w) != 0.0)
    throw Error(ErrorCode::DimensionMismatch,
                "binary matrix violates the assignment constraints");
  const std::size_t nx = w.n_x();
  const std::size_t ny = w.n_y();
  AssignmentVector out{std::vector<std::size_t>(nx, 0)};
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      if (w.w(i, j) == 1.0) out.pi[i] = j + 1;
  return out;
}

double CostMatrix::unassigned_cost() const { return power(c, p) / 2.0; }

namespace {

template <typename AttrX, typename AttrY>
CostMatrix build_cost(std::size_t nx, std::size_t ny, AttrX ax, AttrY ay,
                      const BaseMetric& base, double c, double p) {
  check_params({c, 1.0, p}, false);
  CostMatrix out{Matrix(nx + 1, ny + 1), c, p};
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const double dist = base(ax(i), ay(j));
      if (!(dist >= 0.0) || !std::isfinite(dist))
        throw Error(ErrorCode::InvalidParams, "base metric returned a negative or non-finite value");
      out.d(i, j) = power(dist, p);
    }
  const double half = out.unassigned_cost();
  for (std::size_t i = 0; i < nx; ++i) out.d(i, ny) = half;
  for (std::size_t j = 0; j < ny; ++j) out.d(nx, j) = half;
  return out;
}

}  // namespace

CostMatrix cost_matrix(std::span<const std::vector<double>> vx,
                       std::span<const std::vector<double>> vy,
                       const BaseMetric& base, double c, double p) {
  auto ax = [&](std::size_t i) { return std::span<const double>(vx[i]); };
  auto ay = [&](std::size_t j) { return std::span<const double>(vy[j]); };
  return build_cost(vx.size(), vy.size(), ax, ay, base, c, p);
}

CostMatrix cost_matrix(const ValidatedGraph& x, const ValidatedGraph& y,
                       const BaseMetric& base, double c, double p) {
  auto ax = [&](std::size_t i) { return x.attr(i); };
  auto ay = [&](std::size_t j) { return y.attr(j); };
  return build_cost(x.size(), y.size(), ax, ay, base, c, p);
}

std::vector<std::vector<double>> node_attributes(const ValidatedGraph& g) {
  std::vector<std::vector<double>> out;
  out.reserve(g.size());
  for (const Node& n : g.graph().nodes) out.push_back(n.attr.value_or(std::vector<double>{}));
  return out;
}

GospaResult set_gospa(const CostMatrix& d) {
  const std::size_t nx = d.n_x();
  const std::size_t ny = d.n_y();
  const double half = d.unassigned_cost();
  GospaResult out;
  out.assignment.pi.assign(nx, 0);
  if (nx == 0 || ny == 0) {
    out.missed_p = half * static_cast<double>(nx);
    out.false_p = half * static_cast<double>(ny);
    out.value = root(half * static_cast<double>(nx + ny), d.p);
    return out;
  }

  // Augmented square problem: rows are X then dummy rows for Y, columns are
  // Y then dummy columns for X. x_i may only go to its own dummy column,
  // y_j only to its own dummy row; dummy-to-dummy pairs are free.
  const std::size_t n = nx + ny;
  double finite_total = 0.0;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) finite_total += d.d(i, j);
  const double forbidden = 2.0 * (finite_total + half * static_cast<double>(n)) + 1.0;
  Matrix aug(n, n, forbidden);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) aug(i, j) = d.d(i, j);
    aug(i, ny + i) = half;
  }
  for (std::size_t j = 0; j < ny; ++j) {
    aug(nx + j, j) = half;
    for (std::size_t k = 0; k < nx; ++k) aug(nx + j, ny + k) = 0.0;
  }
  const auto col_of_row = solve_linear_assignment(aug);

  std::vector<double> loc_terms;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < nx; ++i) {
    const std::size_t j = col_of_row[i];
    if (j < ny) {
      out.assignment.pi[i] = j + 1;
      loc_terms.push_back(d.d(i, j));
      ++assigned;
    }
  }
  out.localisation_p = sorted_sum(std::move(loc_terms));
  out.missed_p = half * static_cast<double>(nx - assigned);
  out.false_p = half * static_cast<double>(ny - assigned);
  out.value = root(out.localisation_p +
                       half * static_cast<double>(nx + ny - 2 * assigned),
                   d.p);
  return out;
}

GospaResult set_gospa(std::span<const std::vector<double>> vx,
                      std::span<const std::vector<double>> vy,
                      const BaseMetric& base, double c, double p) {
  return set_gospa(cost_matrix(vx, vy, base, c, p));
}

}  // namespace ggospa
