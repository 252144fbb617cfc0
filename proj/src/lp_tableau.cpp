#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ggospa/lp_solver.hpp"
#include "lp_standard_form.hpp"

namespace ggospa {

namespace {

using detail::StandardForm;
using detail::VarKind;

// Tableau kept over nonbasic columns only: T = B^-1 N, beta = B^-1 b, and
// one reduced-cost row per phase.
class Tableau {
 public:
  Tableau(const LpProblem& lp, const SimplexOptions& opt)
      : opt_(opt), sf_(detail::standardize(lp)) {
    build();
  }

  LpSolution run(const LpProblem& lp);

 private:
  void build();
  double& t(std::size_t i, std::size_t q) { return tab_[i * cols_ + q]; }
  double t(std::size_t i, std::size_t q) const { return tab_[i * cols_ + q]; }

  // Returns false when the iteration limit is hit; sets unbounded_ on an
  // unbounded ray.
  bool optimize(std::vector<double>& cost, double& z, bool phase_one);
  std::size_t choose_entering(std::vector<double>& cost, bool bland);
  std::size_t choose_leaving(std::size_t q, bool bland, bool phase_one,
                             bool& degenerate) const;
  void pivot(std::size_t r, std::size_t q);
  void drive_out_artificials();
  void perturb();
  // Steepest-edge weights 1 + ||T(:, q)||^2, maintained during pivots.
  void recompute_weights();
  // Restores primal feasibility for the unperturbed right-hand side while
  // keeping the reduced costs dual feasible. Returns false on failure.
  bool dual_cleanup();

  const SimplexOptions& opt_;
  StandardForm sf_;
  std::size_t m_ = 0;       // rows
  std::size_t cols_ = 0;    // nonbasic columns
  std::vector<double> tab_;
  // beta_ drives the ratio tests and may be perturbed; rhs_ is the same
  // quantity for the original right-hand side.
  std::vector<double> beta_;
  std::vector<double> rhs_;
  std::vector<double> cost1_, cost2_;
  std::vector<double> weight_;
  double z1_ = 0.0, z2_ = 0.0;
  std::vector<std::size_t> basic_;     // var of each row
  std::vector<std::size_t> nonbasic_;  // var of each column
  std::vector<bool> dead_;             // column may never enter again

  // Per working variable.
  std::vector<VarKind> kind_;
  std::vector<bool> free_;
  std::vector<double> flip_;  // +1 / -1 after free-variable reorientation

  std::size_t iterations_ = 0;
  std::size_t limit_ = 0;
  bool unbounded_ = false;
  std::vector<std::size_t> touched_;
};

void Tableau::build() {
  m_ = sf_.rows;
  const std::size_t nvars = sf_.vars;
  kind_ = sf_.kind;
  free_ = sf_.is_free;
  basic_ = sf_.basis;
  flip_.assign(nvars, 1.0);

  std::vector<bool> is_basic(nvars, false);
  for (std::size_t v : basic_) is_basic[v] = true;
  for (std::size_t v = 0; v < nvars; ++v) {
    if (is_basic[v] || kind_[v] == VarKind::Artificial) continue;
    nonbasic_.push_back(v);
  }
  cols_ = nonbasic_.size();
  dead_.assign(cols_, false);
  tab_.assign(m_ * cols_, 0.0);
  beta_.assign(m_, 0.0);

  for (std::size_t i = 0; i < m_; ++i) beta_[i] = sf_.rhs[i] / sf_.basis_coef[i];
  for (std::size_t q = 0; q < cols_; ++q) {
    const std::size_t v = nonbasic_[q];
    for (std::size_t e = sf_.col_start[v]; e < sf_.col_start[v + 1]; ++e) {
      const std::size_t i = sf_.row_index[e];
      t(i, q) = sf_.value[e] / sf_.basis_coef[i];
    }
  }

  cost2_.assign(cols_, 0.0);
  z2_ = 0.0;
  for (std::size_t q = 0; q < cols_; ++q) cost2_[q] = sf_.cost[nonbasic_[q]];
  for (std::size_t i = 0; i < m_; ++i) {
    const double cv = sf_.cost[basic_[i]];
    if (cv == 0.0) continue;
    z2_ += cv * beta_[i];
    for (std::size_t q = 0; q < cols_; ++q) cost2_[q] -= cv * t(i, q);
  }
  cost1_.assign(cols_, 0.0);
  z1_ = 0.0;
  for (std::size_t i = 0; i < m_; ++i) {
    if (kind_[basic_[i]] != VarKind::Artificial) continue;
    z1_ += beta_[i];
    for (std::size_t q = 0; q < cols_; ++q) cost1_[q] -= t(i, q);
  }
  recompute_weights();

  rhs_ = beta_;
  limit_ = opt_.iteration_limit != 0 ? opt_.iteration_limit : 50 * (m_ + cols_) + 1000;
}

std::size_t Tableau::choose_entering(std::vector<double>& cost, bool bland) {
  const double tol = opt_.optimality_tolerance;
  std::size_t best = cols_;
  double best_score = 0.0;
  for (std::size_t q = 0; q < cols_; ++q) {
    if (dead_[q]) continue;
    const std::size_t v = nonbasic_[q];
    const double d = cost[q];
    const bool eligible = d < -tol || (free_[v] && d > tol);
    if (!eligible) continue;
    if (bland) {
      if (best == cols_ || v < nonbasic_[best]) best = q;
    } else if (d * d > best_score * weight_[q]) {
      best_score = d * d / weight_[q];
      best = q;
    }
  }
  if (best != cols_ && cost[best] > 0.0) {
    // Free variable moving downwards: reorient its column so it increases.
    const std::size_t v = nonbasic_[best];
    flip_[v] = -flip_[v];
    for (std::size_t i = 0; i < m_; ++i) t(i, best) = -t(i, best);
    cost1_[best] = -cost1_[best];
    cost2_[best] = -cost2_[best];
  }
  return best;
}

std::size_t Tableau::choose_leaving(std::size_t q, bool bland, bool phase_one,
                                    bool& degenerate) const {
  const double ptol = opt_.pivot_tolerance;
  std::size_t best = m_;
  double best_ratio = 0.0;
  double best_pivot = 0.0;
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t v = basic_[i];
    if (free_[v]) continue;
    const double a = t(i, q);
    double ratio;
    if (a > ptol) {
      ratio = std::max(beta_[i], 0.0) / a;
    } else if (!phase_one && kind_[v] == VarKind::Artificial && a < -ptol) {
      // Artificial left basic at zero on a redundant row: it must not grow.
      ratio = 0.0;
    } else {
      continue;
    }
    bool take = false;
    if (best == m_) {
      take = true;
    } else {
      const double tie = 1e-12 * std::max(1.0, std::abs(best_ratio));
      if (ratio < best_ratio - tie) {
        take = true;
      } else if (ratio <= best_ratio + tie) {
        take = bland ? v < basic_[best] : std::abs(a) > best_pivot;
      }
    }
    if (take) {
      best = i;
      best_ratio = ratio;
      best_pivot = std::abs(a);
    }
  }
  degenerate = best != m_ && best_ratio * best_pivot <= opt_.feasibility_tolerance * 1e-3;
  return best;
}

void Tableau::pivot(std::size_t r, std::size_t q) {
  const double inv = 1.0 / t(r, q);
  double* prow = &tab_[r * cols_];
  double* weight = weight_.data();
  touched_.clear();
  for (std::size_t j = 0; j < cols_; ++j) {
    if (j == q || prow[j] == 0.0) continue;
    const double old = prow[j];
    prow[j] *= inv;
    weight[j] += prow[j] * prow[j] - old * old;
    touched_.push_back(j);
  }
  prow[q] = inv;
  beta_[r] *= inv;
  rhs_[r] *= inv;
  const double beta_r = beta_[r];
  const double rhs_r = rhs_[r];

  for (std::size_t i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row = &tab_[i * cols_];
    const double f = row[q];
    if (f == 0.0) continue;
    for (std::size_t j : touched_) {
      const double old = row[j];
      const double now = old - f * prow[j];
      row[j] = now;
      weight[j] += (now - old) * (now + old);
    }
    row[q] = -f * inv;
    beta_[i] -= f * beta_r;
    rhs_[i] -= f * rhs_r;
  }
  auto update_cost = [&](std::vector<double>& cost, double& z) {
    const double f = cost[q];
    if (f == 0.0) return;
    for (std::size_t j : touched_) cost[j] -= f * prow[j];
    cost[q] = -f * inv;
    z += f * beta_r;
  };
  update_cost(cost1_, z1_);
  update_cost(cost2_, z2_);

  double wq = 1.0;
  for (std::size_t i = 0; i < m_; ++i) wq += t(i, q) * t(i, q);
  weight_[q] = wq;
  std::swap(basic_[r], nonbasic_[q]);
  if (kind_[nonbasic_[q]] == VarKind::Artificial) dead_[q] = true;
  ++iterations_;
  if (iterations_ % 512 == 0) recompute_weights();
}

bool Tableau::optimize(std::vector<double>& cost, double& z, bool phase_one) {
  std::size_t degenerate_run = 0;
  while (true) {
    if (phase_one && z <= 0.0) return true;
    if (iterations_ >= limit_) return false;
    const bool bland = degenerate_run >= opt_.degenerate_switch;
    const std::size_t q = choose_entering(cost, bland);
    if (q == cols_) return true;
    bool degenerate = false;
    const std::size_t r = choose_leaving(q, bland, phase_one, degenerate);
    if (r == m_) {
      unbounded_ = true;
      return true;
    }
    degenerate_run = degenerate ? degenerate_run + 1 : 0;
    pivot(r, q);
  }
}

void Tableau::drive_out_artificials() {
  for (std::size_t i = 0; i < m_; ++i) {
    if (kind_[basic_[i]] != VarKind::Artificial) continue;
    std::size_t best = cols_;
    double best_abs = opt_.pivot_tolerance;
    for (std::size_t q = 0; q < cols_; ++q) {
      if (dead_[q]) continue;
      if (std::abs(t(i, q)) > best_abs) {
        best_abs = std::abs(t(i, q));
        best = q;
      }
    }
    // No candidate: the row is redundant and the artificial stays at zero.
    if (best != cols_) pivot(i, best);
  }
}

void Tableau::recompute_weights() {
  weight_.assign(cols_, 1.0);
  for (std::size_t i = 0; i < m_; ++i) {
    const double* row = &tab_[i * cols_];
    for (std::size_t q = 0; q < cols_; ++q) weight_[q] += row[q] * row[q];
  }
}

// Rows whose slack starts basic are relaxed by small distinct amounts so
// that ties in the ratio test (and the stalling they cause) disappear.
void Tableau::perturb() {
  double scale = 1.0;
  for (double b : beta_) scale = std::max(scale, std::abs(b));
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < m_; ++i) {
    if (kind_[basic_[i]] != VarKind::Slack) continue;
    // splitmix64 step, deterministic.
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t h = state;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    h ^= h >> 31;
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    beta_[i] += opt_.perturbation * scale * (0.5 + 0.5 * u);
  }
}

bool Tableau::dual_cleanup() {
  const double ftol = opt_.feasibility_tolerance;
  const double ptol = opt_.pivot_tolerance;
  while (true) {
    std::size_t r = m_;
    double worst = -ftol;
    for (std::size_t i = 0; i < m_; ++i) {
      if (free_[basic_[i]]) continue;
      if (rhs_[i] < worst) {
        worst = rhs_[i];
        r = i;
      }
    }
    if (r == m_) return true;
    if (iterations_ >= limit_) return false;
    std::size_t best = cols_;
    double best_ratio = 0.0;
    double best_pivot = 0.0;
    for (std::size_t q = 0; q < cols_; ++q) {
      if (dead_[q]) continue;
      const double a = t(r, q);
      const bool free_col = free_[nonbasic_[q]];
      if (!(a < -ptol || (free_col && a > ptol))) continue;
      const double d = free_col ? std::abs(cost2_[q]) : cost2_[q];
      const double ratio = std::max(d, 0.0) / std::abs(a);
      if (best == cols_ || ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && std::abs(a) > best_pivot)) {
        best = q;
        best_ratio = ratio;
        best_pivot = std::abs(a);
      }
    }
    if (best == cols_) return false;
    if (t(r, best) > 0.0) {
      const std::size_t v = nonbasic_[best];
      flip_[v] = -flip_[v];
      for (std::size_t i = 0; i < m_; ++i) t(i, best) = -t(i, best);
      cost1_[best] = -cost1_[best];
      cost2_[best] = -cost2_[best];
    }
    pivot(r, best);
  }
}

LpSolution Tableau::run(const LpProblem& lp) {
  LpSolution out;
  double b_scale = 1.0;
  for (double b : beta_) b_scale = std::max(b_scale, std::abs(b));
  if (opt_.perturbation > 0.0) perturb();

  if (!optimize(cost1_, z1_, true)) {
    out.status = LpStatus::IterationLimit;
  } else if (z1_ > opt_.feasibility_tolerance * b_scale) {
    out.status = LpStatus::Infeasible;
  } else {
    drive_out_artificials();
    unbounded_ = false;
    if (!optimize(cost2_, z2_, false))
      out.status = LpStatus::IterationLimit;
    else
      out.status = unbounded_ ? LpStatus::Unbounded : LpStatus::Optimal;
    if (out.status == LpStatus::Optimal && !dual_cleanup())
      out.status = iterations_ >= limit_ ? LpStatus::IterationLimit : LpStatus::Infeasible;
  }
  out.iterations = iterations_;

  std::vector<double> z(sf_.vars, 0.0);
  for (std::size_t i = 0; i < m_; ++i) z[basic_[i]] = rhs_[i];
  for (std::size_t v = 0; v < sf_.vars; ++v) z[v] *= flip_[v];
  out.values = sf_.recover(z);
  out.objective = 0.0;
  for (std::size_t k = 0; k < out.values.size(); ++k)
    out.objective += lp.objective[k] * out.values[k];
  return out;
}

}  // namespace

LpSolution TableauSimplexSolver::solve(const LpProblem& problem) const {
  problem.check();
  Tableau tableau(problem, options_);
  return tableau.run(problem);
}

}  // namespace ggospa
