#include "ggospa/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "ggospa/error.hpp"

namespace ggospa {

std::size_t LpProblem::add_variable(double cost, double lo, double hi) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  return objective.size() - 1;
}

void LpProblem::check() const {
  const std::size_t n = objective.size();
  if (lower.size() != n || upper.size() != n)
    throw Error(ErrorCode::InvalidParams, "bounds do not match the number of variables");
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(objective[k]))
      throw Error(ErrorCode::InvalidParams, "non-finite objective coefficient");
    if (std::isnan(lower[k]) || std::isnan(upper[k]) || lower[k] == kInf ||
        upper[k] == -kInf || lower[k] > upper[k])
      throw Error(ErrorCode::InvalidParams,
                  "empty bound interval for variable " + std::to_string(k));
  }
  auto check_rows = [n](const std::vector<LpRow>& rows) {
    for (const LpRow& row : rows) {
      if (!std::isfinite(row.rhs))
        throw Error(ErrorCode::InvalidParams, "non-finite right-hand side");
      for (const auto& [k, a] : row.terms) {
        if (k >= n) throw Error(ErrorCode::InvalidParams, "row references unknown variable");
        if (!std::isfinite(a)) throw Error(ErrorCode::InvalidParams, "non-finite coefficient");
      }
    }
  };
  check_rows(equalities);
  check_rows(inequalities);
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    case LpStatus::IterationLimit: return "IterationLimit";
    case LpStatus::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

double max_violation(const LpProblem& problem, const std::vector<double>& x) {
  double worst = 0.0;
  auto row_value = [&](const LpRow& row, double& scale) {
    double s = 0.0;
    scale = 1.0;
    for (const auto& [k, a] : row.terms) {
      s += a * x[k];
      scale = std::max(scale, std::abs(a));
    }
    return s;
  };
  for (const LpRow& row : problem.equalities) {
    double scale;
    const double v = row_value(row, scale);
    worst = std::max(worst, std::abs(v - row.rhs) / scale);
  }
  for (const LpRow& row : problem.inequalities) {
    double scale;
    const double v = row_value(row, scale);
    worst = std::max(worst, (row.rhs - v) / scale);
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    worst = std::max(worst, problem.lower[k] - x[k]);
    worst = std::max(worst, x[k] - problem.upper[k]);
  }
  return worst;
}

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_terms(std::string& out, const std::vector<std::pair<std::size_t, double>>& terms,
                  const std::vector<std::string>& names) {
  bool first = true;
  for (const auto& [k, a] : terms) {
    if (a == 0.0) continue;
    out += a < 0.0 ? " - " : (first ? " " : " + ");
    out += number(std::abs(a));
    out += ' ';
    out += names[k];
    first = false;
  }
  if (first) out += " 0 " + (names.empty() ? std::string("x0") : names[0]);
}

}  // namespace

std::string write_lp_format(const LpProblem& problem, const std::vector<std::string>& names) {
  std::vector<std::string> label = names;
  if (label.size() != problem.num_variables()) {
    label.clear();
    for (std::size_t k = 0; k < problem.num_variables(); ++k)
      label.push_back("x" + std::to_string(k));
  }
  std::string out = "Minimize\n obj:";
  std::vector<std::pair<std::size_t, double>> obj;
  for (std::size_t k = 0; k < problem.num_variables(); ++k)
    if (problem.objective[k] != 0.0) obj.emplace_back(k, problem.objective[k]);
  append_terms(out, obj, label);
  out += "\nSubject To\n";
  std::size_t r = 0;
  for (const LpRow& row : problem.equalities) {
    out += " r" + std::to_string(r++) + ":";
    append_terms(out, row.terms, label);
    out += " = " + number(row.rhs) + "\n";
  }
  for (const LpRow& row : problem.inequalities) {
    out += " r" + std::to_string(r++) + ":";
    append_terms(out, row.terms, label);
    out += " >= " + number(row.rhs) + "\n";
  }
  out += "Bounds\n";
  for (std::size_t k = 0; k < problem.num_variables(); ++k) {
    const double lo = problem.lower[k];
    const double hi = problem.upper[k];
    if (std::isinf(lo) && std::isinf(hi)) {
      out += " " + label[k] + " free\n";
    } else if (lo != 0.0 || !std::isinf(hi)) {
      out += " " + (std::isinf(lo) ? std::string("-inf") : number(lo)) + " <= " + label[k] +
             " <= " + (std::isinf(hi) ? std::string("+inf") : number(hi)) + "\n";
    }
  }
  out += "End\n";
  return out;
}

}  // namespace ggospa
