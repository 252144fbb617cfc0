#include "lp_standard_form.hpp"

#include <cmath>
#include <utility>

namespace ggospa::detail {

namespace {

struct WorkRow {
  std::vector<std::pair<std::size_t, double>> terms;
  double rhs = 0.0;
  bool inequality = false;
};

}  // namespace

std::vector<double> StandardForm::recover(const std::vector<double>& z) const {
  std::vector<double> x(structurals);
  for (std::size_t k = 0; k < structurals; ++k) {
    double zk = z[k];
    if (!is_free[k] && zk < 0.0) zk = 0.0;
    x[k] = offset[k] + sign[k] * zk;
  }
  return x;
}

StandardForm standardize(const LpProblem& lp) {
  StandardForm sf;
  const std::size_t n = lp.num_variables();
  sf.structurals = n;
  sf.offset.assign(n, 0.0);
  sf.sign.assign(n, 1.0);
  sf.kind.assign(n, VarKind::Structural);
  sf.is_free.assign(n, false);

  std::vector<WorkRow> rows;
  rows.reserve(lp.equalities.size() + lp.inequalities.size());
  std::vector<WorkRow> bound_rows;
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = lp.lower[k];
    const double hi = lp.upper[k];
    if (std::isfinite(lo)) {
      sf.offset[k] = lo;
      // z_k <= hi - lo as -z_k >= lo - hi.
      if (std::isfinite(hi)) bound_rows.push_back({{{k, -1.0}}, -(hi - lo), true});
    } else if (std::isfinite(hi)) {
      sf.offset[k] = hi;
      sf.sign[k] = -1.0;
    } else {
      sf.is_free[k] = true;
    }
  }

  auto translate = [&](const LpRow& row, bool inequality) {
    WorkRow out{{}, row.rhs, inequality};
    out.terms.reserve(row.terms.size());
    for (const auto& [k, a] : row.terms) {
      if (a == 0.0) continue;
      out.rhs -= a * sf.offset[k];
      out.terms.emplace_back(k, a * sf.sign[k]);
    }
    return out;
  };
  for (const LpRow& row : lp.equalities) rows.push_back(translate(row, false));
  for (const LpRow& row : lp.inequalities) rows.push_back(translate(row, true));
  for (WorkRow& row : bound_rows) rows.push_back(std::move(row));

  const std::size_t m = rows.size();
  sf.rows = m;

  // Slacks: a z - s = b for each inequality row.
  std::vector<long> slack_of(m, -1);
  std::size_t nvars = n;
  for (std::size_t i = 0; i < m; ++i) {
    if (!rows[i].inequality) continue;
    slack_of[i] = static_cast<long>(nvars++);
    sf.kind.push_back(VarKind::Slack);
    sf.is_free.push_back(false);
  }

  // Structural columns occurring in a single row can start basic there,
  // which spares an artificial (crash basis).
  std::vector<std::size_t> occurrences(n, 0);
  for (const WorkRow& row : rows)
    for (const auto& term : row.terms) ++occurrences[term.first];
  std::vector<bool> taken(n, false);
  std::vector<double> row_sign(m, 1.0);
  sf.basis.assign(m, 0);
  sf.basis_coef.assign(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    // Orient so the right-hand side is nonnegative. An inequality row
    // a z - s = b with b <= 0 becomes -a z + s = -b with s basic.
    if (rows[i].inequality && rows[i].rhs <= 0.0) {
      row_sign[i] = -1.0;
      sf.basis[i] = static_cast<std::size_t>(slack_of[i]);
      continue;
    }
    if (rows[i].rhs < 0.0) row_sign[i] = -1.0;
    const bool zero_rhs = rows[i].rhs == 0.0;
    std::size_t pick = n;
    double pick_coef = 0.0;
    for (const auto& [k, a] : rows[i].terms) {
      if (occurrences[k] != 1 || sf.is_free[k] || taken[k]) continue;
      const double sa = row_sign[i] * a;
      if ((sa > 0.0 || zero_rhs) && std::abs(sa) > std::abs(pick_coef)) {
        pick = k;
        pick_coef = sa;
      }
    }
    if (pick != n) {
      taken[pick] = true;
      sf.basis[i] = pick;
      sf.basis_coef[i] = pick_coef;
    } else {
      sf.basis[i] = nvars++;
      sf.kind.push_back(VarKind::Artificial);
      sf.is_free.push_back(false);
    }
  }
  sf.vars = nvars;

  sf.cost.assign(nvars, 0.0);
  for (std::size_t k = 0; k < n; ++k) sf.cost[k] = lp.objective[k] * sf.sign[k];

  sf.rhs.resize(m);
  std::vector<std::vector<std::pair<std::size_t, double>>> cols(nvars);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = row_sign[i];
    sf.rhs[i] = s * rows[i].rhs;
    for (const auto& [k, a] : rows[i].terms) {
      auto& col = cols[k];
      if (!col.empty() && col.back().first == i)
        col.back().second += s * a;
      else
        col.emplace_back(i, s * a);
    }
    if (slack_of[i] >= 0) cols[static_cast<std::size_t>(slack_of[i])].emplace_back(i, -s);
    if (sf.kind[sf.basis[i]] == VarKind::Artificial) cols[sf.basis[i]].emplace_back(i, 1.0);
  }
  sf.col_start.assign(nvars + 1, 0);
  for (std::size_t j = 0; j < nvars; ++j) {
    for (const auto& [i, a] : cols[j]) {
      if (a == 0.0) continue;
      sf.row_index.push_back(i);
      sf.value.push_back(a);
    }
    sf.col_start[j + 1] = sf.row_index.size();
  }
  return sf;
}

}  // namespace ggospa::detail
