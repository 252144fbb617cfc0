#include "ggospa/lp_metric.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "ggospa/decomposition.hpp"
#include "ggospa/error.hpp"
#include "ggospa/exact.hpp"

namespace ggospa {

namespace {

// Linear form over W entries; coefficients of the same variable merge.
using Form = std::map<std::size_t, double>;

void add_abs_rows(LpProblem& lp, std::size_t h_var, const Form& form) {
  // h - form >= 0 and h + form >= 0.
  for (double sign : {-1.0, 1.0}) {
    LpRow row;
    row.terms.emplace_back(h_var, 1.0);
    for (const auto& [k, a] : form)
      if (a != 0.0) row.terms.emplace_back(k, sign * a);
    lp.inequalities.push_back(std::move(row));
  }
}

}  // namespace

std::vector<std::string> LpEncoding::variable_names() const {
  std::vector<std::string> names(problem.num_variables());
  for (std::size_t i = 0; i <= n_x; ++i)
    for (std::size_t j = 0; j <= n_y; ++j)
      if (i != n_x || j != n_y)
        names[w(i, j)] = "w_" + std::to_string(i) + "_" + std::to_string(j);
  names[e_hat] = "e";
  for (std::size_t i = 0; i < n_x; ++i)
    for (std::size_t j = 0; j < n_y; ++j)
      names[h(i, j)] = "h_" + std::to_string(i) + "_" + std::to_string(j);
  if (directed) {
    names[e_hat2] = "e2";
    for (std::size_t j = 0; j < n_y; ++j)
      for (std::size_t i = 0; i < n_x; ++i)
        names[h2(j, i)] = "h2_" + std::to_string(j) + "_" + std::to_string(i);
  }
  return names;
}

LpEncoding build_lp(const PreparedPair& pair, const MetricParams& params) {
  const Matrix& ax = *pair.ax;
  const Matrix& ay = *pair.ay;
  LpEncoding enc;
  enc.n_x = ax.rows();
  enc.n_y = ay.rows();
  enc.directed = pair.directed;
  const std::size_t nx = enc.n_x;
  const std::size_t ny = enc.n_y;
  LpProblem& lp = enc.problem;
  constexpr double kInf = LpProblem::kInf;

  for (std::size_t i = 0; i <= nx; ++i)
    for (std::size_t j = 0; j <= ny; ++j)
      if (i != nx || j != ny) lp.add_variable(pair.d.d(i, j));

  const double ep = power(params.epsilon, params.p);
  const double edge_coef = pair.directed ? ep / 4.0 : ep / 2.0;
  enc.e_hat = lp.add_variable(edge_coef);
  for (std::size_t k = 0; k < nx * ny; ++k) lp.add_variable(0.0, -kInf, kInf);
  if (pair.directed) {
    enc.e_hat2 = lp.add_variable(edge_coef);
    for (std::size_t k = 0; k < nx * ny; ++k) lp.add_variable(0.0, -kInf, kInf);
  }

  for (std::size_t i = 0; i < nx; ++i) {
    LpRow row{{}, 1.0};
    for (std::size_t j = 0; j <= ny; ++j) row.terms.emplace_back(enc.w(i, j), 1.0);
    lp.equalities.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < ny; ++j) {
    LpRow row{{}, 1.0};
    for (std::size_t i = 0; i <= nx; ++i) row.terms.emplace_back(enc.w(i, j), 1.0);
    lp.equalities.push_back(std::move(row));
  }

  auto sum_row = [&](std::size_t e_var, auto&& index) {
    LpRow row{{{e_var, 1.0}}, 0.0};
    for (std::size_t a = 0; a < nx; ++a)
      for (std::size_t b = 0; b < ny; ++b) row.terms.emplace_back(index(a, b), -1.0);
    lp.inequalities.push_back(std::move(row));
  };

  sum_row(enc.e_hat, [&](std::size_t i, std::size_t j) { return enc.h(i, j); });
  // (A_X W0 - W0 A_Y)(i, j) = sum_k A_X(i,k) W(k,j) - sum_l W(i,l) A_Y(l,j).
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      Form form;
      for (std::size_t k = 0; k < nx; ++k)
        if (ax(i, k) != 0.0) form[enc.w(k, j)] += ax(i, k);
      for (std::size_t l = 0; l < ny; ++l)
        if (ay(l, j) != 0.0) form[enc.w(i, l)] -= ay(l, j);
      add_abs_rows(lp, enc.h(i, j), form);
    }
  }

  if (pair.directed) {
    sum_row(enc.e_hat2, [&](std::size_t i, std::size_t j) { return enc.h2(j, i); });
    // (A_Y W0^T - W0^T A_X)(j, i) = sum_l A_Y(j,l) W(i,l) - sum_k W(k,j) A_X(k,i).
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        Form form;
        for (std::size_t l = 0; l < ny; ++l)
          if (ay(j, l) != 0.0) form[enc.w(i, l)] += ay(j, l);
        for (std::size_t k = 0; k < nx; ++k)
          if (ax(k, i) != 0.0) form[enc.w(k, j)] -= ax(k, i);
        add_abs_rows(lp, enc.h2(j, i), form);
      }
    }
  }
  return enc;
}

LpEncoding build_lp(const ValidatedGraph& x, const ValidatedGraph& y,
                    const MetricParams& params, bool directed,
                    const MetricOptions& options) {
  return build_lp(prepare_pair(x, y, params, options, directed), params);
}

MetricResult lp_graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                            const MetricParams& params, const MetricOptions& options) {
  return lp_graph_gospa(x, y, params, x.directed() || y.directed(), options);
}

MetricResult lp_graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                            const MetricParams& params, bool directed,
                            const MetricOptions& options, const LpSolver& solver) {
  const PreparedPair pair = prepare_pair(x, y, params, options, directed);
  const LpEncoding enc = build_lp(pair, params);
  const LpSolution sol = solver.solve(enc.problem);
  if (sol.status != LpStatus::Optimal)
    throw Error(ErrorCode::SolverFailure, "LP solver stopped with status " + to_string(sol.status));

  const std::size_t nx = enc.n_x;
  const std::size_t ny = enc.n_y;
  MetricResult out;
  out.mode = SolveMode::Lp;
  out.directed = directed;
  out.assignment.w = Matrix(nx + 1, ny + 1);
  Matrix& w = out.assignment.w;
  for (std::size_t i = 0; i <= nx; ++i)
    for (std::size_t j = 0; j <= ny; ++j)
      if (i != nx || j != ny) w(i, j) = std::max(sol.values[enc.w(i, j)], 0.0);
  out.integral = is_integral(w);
  if (out.integral) {
    for (std::size_t i = 0; i <= nx; ++i)
      for (std::size_t j = 0; j <= ny; ++j) w(i, j) = w(i, j) > 0.5 ? 1.0 : 0.0;
  }
  out.assignment.integral = out.integral;
  out.decomposition = decompose(w, pair.d, *pair.ax, *pair.ay, params, directed);
  out.value = out.decomposition.value(params.p);
  return out;
}

MetricResult pseudometric(const ValidatedGraph& x, const ValidatedGraph& y,
                          const MetricParams& params, bool directed, SolveMode mode,
                          MetricOptions options) {
  options.ignore_attributes = true;
  return graph_gospa(x, y, params, mode, directed, options);
}

MetricResult graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                         const MetricParams& params, SolveMode mode, bool directed,
                         const MetricOptions& options) {
  if (mode == SolveMode::Exact) return exact_graph_gospa(x, y, params, directed, options);
  return lp_graph_gospa(x, y, params, directed, options);
}

std::string lp_text(const LpEncoding& encoding) {
  return "\\ graph GOSPA linear relaxation\n" +
         write_lp_format(encoding.problem, encoding.variable_names());
}

}  // namespace ggospa
