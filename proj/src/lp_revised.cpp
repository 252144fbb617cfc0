#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <klu.h>

#include "ggospa/lp_solver.hpp"
#include "lp_standard_form.hpp"

namespace ggospa {

namespace {

using detail::StandardForm;
using detail::VarKind;
using Vec = std::vector<double>;

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Sparse LU factorization of a square matrix in compressed-column form.
class KluFactor {
 public:
  KluFactor() {
    klu_defaults(&common_);
    common_.halt_if_singular = 1;
  }
  KluFactor(const KluFactor&) = delete;
  KluFactor& operator=(const KluFactor&) = delete;
  ~KluFactor() { release(); }

  bool factor(std::vector<int> col_start, std::vector<int> row_index, std::vector<double> value) {
    release();
    ap_ = std::move(col_start);
    ai_ = std::move(row_index);
    ax_ = std::move(value);
    n_ = static_cast<int>(ap_.size()) - 1;
    symbolic_ = klu_analyze(n_, ap_.data(), ai_.data(), &common_);
    if (symbolic_ == nullptr) return false;
    numeric_ = klu_factor(ap_.data(), ai_.data(), ax_.data(), symbolic_, &common_);
    return numeric_ != nullptr && common_.status == KLU_OK;
  }

  // In place: v <- B^-1 v.
  void solve(Vec& v) const { klu_solve(symbolic_, numeric_, n_, 1, v.data(), &common_); }
  // In place: v <- B^-T v.
  void tsolve(Vec& v) const { klu_tsolve(symbolic_, numeric_, n_, 1, v.data(), &common_); }

 private:
  void release() {
    if (numeric_ != nullptr) klu_free_numeric(&numeric_, &common_);
    if (symbolic_ != nullptr) klu_free_symbolic(&symbolic_, &common_);
  }

  mutable klu_common common_;
  klu_symbolic* symbolic_ = nullptr;
  klu_numeric* numeric_ = nullptr;
  int n_ = 0;
  std::vector<int> ap_;
  std::vector<int> ai_;
  std::vector<double> ax_;
};

// Revised simplex over the working form. The basis inverse is represented
// by an LU factorization of B followed by a list of eta columns, one per
// pivot since the last refactorization.
class Revised {
 public:
  Revised(const LpProblem& lp, const SimplexOptions& opt);

  LpSolution run(const LpProblem& lp);

 private:
  enum class Outcome { Optimal, Unbounded, Limit, Singular, Infeasible };

  struct Eta {
    std::size_t r;
    double pivot;
    std::vector<std::pair<std::size_t, double>> col;  // entries other than r
  };

  bool factorize();
  void ftran(Vec& v) const;
  void btran(Vec& v) const;
  Vec column(std::size_t j) const;
  Vec unit_row(std::size_t r) const;
  void compute_pivot_row(const Vec& rho);
  void compute_primal();
  void compute_duals(const std::vector<double>& cost, std::vector<double>& d) const;
  bool refresh();

  Outcome optimize(bool phase_one);
  std::size_t choose_entering(const std::vector<double>& d, bool bland) const;
  std::size_t ratio_test(const Vec& alpha, double dir, bool phase_one, bool bland,
                         bool& degenerate) const;
  bool pivot(std::size_t r, std::size_t q, const Vec& alpha);
  bool drive_out_artificials();
  Outcome dual_cleanup();
  double artificial_mass() const;
  void perturb();

  const SimplexOptions& opt_;
  StandardForm sf_;
  std::size_t m_ = 0;
  std::size_t nv_ = 0;

  // Row-major copy of A for pivot-row products.
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> row_col_;
  std::vector<double> row_val_;

  // bp_ is the (possibly perturbed) right-hand side steering the search;
  // xb_ = B^-1 bp_ and xt_ = B^-1 b are tracked side by side.
  std::vector<double> bp_;
  Vec xb_;
  Vec xt_;

  std::vector<double> cost1_;
  std::vector<double> d1_;
  std::vector<double> d2_;
  std::vector<double> weight_;  // Devex reference weights

  std::vector<std::size_t> basic_;
  std::vector<long> pos_;  // row of a basic variable, -1 when nonbasic
  std::vector<bool> dead_;  // artificials that left the basis

  std::vector<double> row_;  // current pivot row, by variable
  std::vector<char> in_row_;
  std::vector<std::size_t> row_nz_;

  KluFactor lu_;
  bool factored_ = false;
  std::vector<Eta> etas_;

  std::size_t iterations_ = 0;
  std::size_t limit_ = 0;
};

Revised::Revised(const LpProblem& lp, const SimplexOptions& opt)
    : opt_(opt), sf_(detail::standardize(lp)) {
  m_ = sf_.rows;
  nv_ = sf_.vars;

  row_start_.assign(m_ + 1, 0);
  for (std::size_t i : sf_.row_index) ++row_start_[i + 1];
  for (std::size_t i = 0; i < m_; ++i) row_start_[i + 1] += row_start_[i];
  row_col_.resize(sf_.row_index.size());
  row_val_.resize(sf_.row_index.size());
  std::vector<std::size_t> fill(row_start_.begin(), row_start_.end() - 1);
  for (std::size_t j = 0; j < nv_; ++j) {
    for (std::size_t e = sf_.col_start[j]; e < sf_.col_start[j + 1]; ++e) {
      const std::size_t k = fill[sf_.row_index[e]]++;
      row_col_[k] = j;
      row_val_[k] = sf_.value[e];
    }
  }

  basic_ = sf_.basis;
  pos_.assign(nv_, -1);
  for (std::size_t i = 0; i < m_; ++i) pos_[basic_[i]] = static_cast<long>(i);
  dead_.assign(nv_, false);
  cost1_.assign(nv_, 0.0);
  for (std::size_t j = 0; j < nv_; ++j)
    if (sf_.kind[j] == VarKind::Artificial) cost1_[j] = 1.0;
  d1_.assign(nv_, 0.0);
  d2_.assign(nv_, 0.0);
  weight_.assign(nv_, 1.0);
  row_.assign(nv_, 0.0);
  in_row_.assign(nv_, 0);
  bp_ = sf_.rhs;
  limit_ = opt_.iteration_limit != 0 ? opt_.iteration_limit : 50 * (m_ + nv_) + 1000;
}

bool Revised::factorize() {
  etas_.clear();
  factored_ = false;
  if (m_ == 0) return true;
  std::vector<int> col_start(m_ + 1, 0);
  std::vector<int> row_index;
  std::vector<double> value;
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t j = basic_[i];
    for (std::size_t e = sf_.col_start[j]; e < sf_.col_start[j + 1]; ++e) {
      row_index.push_back(static_cast<int>(sf_.row_index[e]));
      value.push_back(sf_.value[e]);
    }
    col_start[i + 1] = static_cast<int>(row_index.size());
  }
  if (!lu_.factor(std::move(col_start), std::move(row_index), std::move(value))) return false;
  factored_ = true;
  return true;
}

void Revised::ftran(Vec& v) const {
  if (factored_) lu_.solve(v);
  for (const Eta& eta : etas_) {
    const double vr = v[eta.r] / eta.pivot;
    if (vr != 0.0)
      for (const auto& [i, a] : eta.col) v[i] -= a * vr;
    v[eta.r] = vr;
  }
}

void Revised::btran(Vec& v) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = v[it->r];
    for (const auto& [i, a] : it->col) s -= a * v[i];
    v[it->r] = s / it->pivot;
  }
  if (factored_) lu_.tsolve(v);
}

Vec Revised::column(std::size_t j) const {
  Vec v(m_, 0.0);
  for (std::size_t e = sf_.col_start[j]; e < sf_.col_start[j + 1]; ++e)
    v[sf_.row_index[e]] = sf_.value[e];
  return v;
}

Vec Revised::unit_row(std::size_t r) const {
  Vec v(m_, 0.0);
  v[r] = 1.0;
  return v;
}

// row_[j] = (B^-1 A)(r, j) for the nonbasic, non-dead variables, given
// rho = B^-T e_r.
void Revised::compute_pivot_row(const Vec& rho) {
  for (std::size_t j : row_nz_) {
    row_[j] = 0.0;
    in_row_[j] = 0;
  }
  row_nz_.clear();
  for (std::size_t i = 0; i < m_; ++i) {
    const double ri = rho[i];
    if (ri == 0.0) continue;
    for (std::size_t e = row_start_[i]; e < row_start_[i + 1]; ++e) {
      const std::size_t j = row_col_[e];
      if (pos_[j] >= 0 || dead_[j]) continue;
      if (!in_row_[j]) {
        in_row_[j] = 1;
        row_nz_.push_back(j);
      }
      row_[j] += ri * row_val_[e];
    }
  }
}

void Revised::compute_primal() {
  Vec b = sf_.rhs;
  Vec bp = bp_;
  ftran(b);
  ftran(bp);
  xt_ = std::move(b);
  xb_ = std::move(bp);
}

void Revised::compute_duals(const std::vector<double>& cost, std::vector<double>& d) const {
  Vec y(m_);
  for (std::size_t i = 0; i < m_; ++i) y[i] = cost[basic_[i]];
  btran(y);
  for (std::size_t j = 0; j < nv_; ++j) {
    if (pos_[j] >= 0) {
      d[j] = 0.0;
      continue;
    }
    double s = cost[j];
    for (std::size_t e = sf_.col_start[j]; e < sf_.col_start[j + 1]; ++e)
      s -= y[sf_.row_index[e]] * sf_.value[e];
    d[j] = s;
  }
}

bool Revised::refresh() {
  if (!factorize()) return false;
  compute_primal();
  compute_duals(cost1_, d1_);
  compute_duals(sf_.cost, d2_);
  return true;
}

double Revised::artificial_mass() const {
  double s = 0.0;
  for (std::size_t i = 0; i < m_; ++i)
    if (sf_.kind[basic_[i]] == VarKind::Artificial) s += std::max(xb_[i], 0.0);
  return s;
}

// Rows whose slack starts basic are relaxed by small distinct amounts so
// that ties in the ratio test (and the stalling they cause) disappear.
void Revised::perturb() {
  double scale = 1.0;
  for (double b : sf_.rhs) scale = std::max(scale, std::abs(b));
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < m_; ++i) {
    if (sf_.kind[sf_.basis[i]] != VarKind::Slack) continue;
    // splitmix64 step, deterministic.
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t h = state;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    h ^= h >> 31;
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    bp_[i] += opt_.perturbation * scale * (0.5 + 0.5 * u);
  }
}

std::size_t Revised::choose_entering(const std::vector<double>& d, bool bland) const {
  const double tol = opt_.optimality_tolerance;
  std::size_t best = kNone;
  double best_score = 0.0;
  for (std::size_t j = 0; j < nv_; ++j) {
    if (pos_[j] >= 0 || dead_[j]) continue;
    const double dj = d[j];
    if (!(dj < -tol || (sf_.is_free[j] && dj > tol))) continue;
    if (bland) return j;
    const double score = dj * dj / weight_[j];
    if (score > best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

std::size_t Revised::ratio_test(const Vec& alpha, double dir, bool phase_one, bool bland,
                                bool& degenerate) const {
  const double ptol = opt_.pivot_tolerance;
  std::size_t best = kNone;
  double best_ratio = 0.0;
  double best_pivot = 0.0;
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t v = basic_[i];
    if (sf_.is_free[v]) continue;
    const double a = dir * alpha[i];
    double ratio;
    if (a > ptol) {
      ratio = std::max(xb_[i], 0.0) / a;
    } else if (!phase_one && sf_.kind[v] == VarKind::Artificial && a < -ptol) {
      // Artificial left basic at zero on a redundant row: it must not grow.
      ratio = 0.0;
    } else {
      continue;
    }
    bool take = false;
    if (best == kNone) {
      take = true;
    } else {
      const double tie = 1e-12 * std::max(1.0, best_ratio);
      if (ratio < best_ratio - tie)
        take = true;
      else if (ratio <= best_ratio + tie)
        take = bland ? v < basic_[best] : std::abs(a) > best_pivot;
    }
    if (take) {
      best = i;
      best_ratio = ratio;
      best_pivot = std::abs(a);
    }
  }
  degenerate = best != kNone && best_ratio * best_pivot <= opt_.feasibility_tolerance * 1e-3;
  return best;
}

bool Revised::pivot(std::size_t r, std::size_t q, const Vec& alpha) {
  const auto ri = r;
  const double arq = alpha[ri];
  const double step_b = xb_[ri] / arq;
  const double step_t = xt_[ri] / arq;
  for (std::size_t i = 0; i < m_; ++i) {
    const double a = alpha[i];
    if (a == 0.0 || i == r) continue;
    xb_[i] -= step_b * a;
    xt_[i] -= step_t * a;
  }
  xb_[ri] = step_b;
  xt_[ri] = step_t;

  const std::size_t leaving = basic_[r];
  for (std::vector<double>* d : {&d1_, &d2_}) {
    const double f = (*d)[q] / arq;
    if (f != 0.0)
      for (std::size_t j : row_nz_) (*d)[j] -= f * row_[j];
    (*d)[q] = 0.0;
    (*d)[leaving] = -f;
  }

  const double wq = weight_[q];
  for (std::size_t j : row_nz_) {
    if (j == q) continue;
    const double ratio = row_[j] / arq;
    weight_[j] = std::max(weight_[j], ratio * ratio * wq);
  }
  weight_[leaving] = std::max(wq / (arq * arq), 1.0);

  basic_[r] = q;
  pos_[q] = static_cast<long>(r);
  pos_[leaving] = -1;
  if (sf_.kind[leaving] == VarKind::Artificial) dead_[leaving] = true;

  Eta eta{r, arq, {}};
  for (std::size_t i = 0; i < m_; ++i) {
    const double a = alpha[i];
    if (i != r && a != 0.0) eta.col.emplace_back(i, a);
  }
  etas_.push_back(std::move(eta));
  ++iterations_;

  if (etas_.size() >= opt_.refactor_interval) {
    if (!refresh()) return false;
    double wmax = 0.0;
    for (double w : weight_) wmax = std::max(wmax, w);
    if (wmax > 1e8) std::fill(weight_.begin(), weight_.end(), 1.0);
  }
  return true;
}

Revised::Outcome Revised::optimize(bool phase_one) {
  std::vector<double>& d = phase_one ? d1_ : d2_;
  const std::vector<double>& cost = phase_one ? cost1_ : sf_.cost;
  double scale = 1.0;
  for (double b : sf_.rhs) scale = std::max(scale, std::abs(b));
  std::size_t degenerate_run = 0;
  bool confirmed = false;
  while (true) {
    if (phase_one && artificial_mass() <= opt_.feasibility_tolerance * scale)
      return Outcome::Optimal;
    if (iterations_ >= limit_) return Outcome::Limit;
    const bool bland = degenerate_run >= opt_.degenerate_switch;
    const std::size_t q = choose_entering(d, bland);
    if (q == kNone) {
      // Confirm optimality against reduced costs computed from scratch.
      if (confirmed) return Outcome::Optimal;
      compute_duals(cost, d);
      confirmed = true;
      continue;
    }
    confirmed = false;
    const double dir = d[q] < 0.0 ? 1.0 : -1.0;
    Vec alpha = column(q);
    ftran(alpha);
    bool degenerate = false;
    const std::size_t r = ratio_test(alpha, dir, phase_one, bland, degenerate);
    if (r == kNone) return Outcome::Unbounded;
    Vec rho = unit_row(r);
    btran(rho);
    compute_pivot_row(rho);
    const double arq = alpha[r];
    if (!etas_.empty() && std::abs(row_[q] - arq) > 1e-8 * (1.0 + std::abs(arq))) {
      // Row and column disagree on the pivot: the updates have drifted.
      if (!refresh()) return Outcome::Singular;
      continue;
    }
    degenerate_run = degenerate ? degenerate_run + 1 : 0;
    if (!pivot(r, q, alpha)) return Outcome::Singular;
  }
}

bool Revised::drive_out_artificials() {
  for (std::size_t r = 0; r < m_; ++r) {
    if (sf_.kind[basic_[r]] != VarKind::Artificial) continue;
    Vec rho = unit_row(r);
    btran(rho);
    compute_pivot_row(rho);
    std::size_t best = kNone;
    double best_abs = opt_.pivot_tolerance;
    for (std::size_t j : row_nz_) {
      if (std::abs(row_[j]) > best_abs) {
        best_abs = std::abs(row_[j]);
        best = j;
      }
    }
    // No candidate: the row is redundant and the artificial stays at zero.
    if (best == kNone) continue;
    Vec alpha = column(best);
    ftran(alpha);
    if (!pivot(r, best, alpha)) return false;
  }
  return true;
}

// Dual simplex on the exact right-hand side. The reduced costs are dual
// feasible when it starts, so it only has to repair the primal values that
// the perturbation left slightly negative.
Revised::Outcome Revised::dual_cleanup() {
  const double ftol = opt_.feasibility_tolerance;
  const double ptol = opt_.pivot_tolerance;
  bp_ = sf_.rhs;
  if (!refresh()) return Outcome::Singular;
  while (true) {
    std::size_t r = kNone;
    double worst = -ftol;
    for (std::size_t i = 0; i < m_; ++i) {
      if (sf_.is_free[basic_[i]]) continue;
      if (xt_[i] < worst) {
        worst = xt_[i];
        r = i;
      }
    }
    if (r == kNone) return Outcome::Optimal;
    if (iterations_ >= limit_) return Outcome::Limit;
    Vec rho = unit_row(r);
    btran(rho);
    compute_pivot_row(rho);
    std::size_t best = kNone;
    double best_ratio = 0.0;
    double best_pivot = 0.0;
    for (std::size_t j : row_nz_) {
      const double a = row_[j];
      const bool free_var = sf_.is_free[j];
      if (!(a < -ptol || (free_var && a > ptol))) continue;
      const double dj = free_var ? std::abs(d2_[j]) : std::max(d2_[j], 0.0);
      const double ratio = dj / std::abs(a);
      if (best == kNone || ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && std::abs(a) > best_pivot)) {
        best = j;
        best_ratio = ratio;
        best_pivot = std::abs(a);
      }
    }
    if (best == kNone) return Outcome::Infeasible;
    Vec alpha = column(best);
    ftran(alpha);
    if (!pivot(r, best, alpha)) return Outcome::Singular;
  }
}

LpSolution Revised::run(const LpProblem& lp) {
  LpSolution out;
  auto finish = [&](LpStatus status) {
    out.status = status;
    out.iterations = iterations_;
    std::vector<double> z(nv_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) z[basic_[i]] = xt_[i];
    out.values = sf_.recover(z);
    out.objective = 0.0;
    for (std::size_t k = 0; k < out.values.size(); ++k)
      out.objective += lp.objective[k] * out.values[k];
    return out;
  };
  auto status_of = [](Outcome o) {
    switch (o) {
      case Outcome::Unbounded: return LpStatus::Unbounded;
      case Outcome::Limit: return LpStatus::IterationLimit;
      case Outcome::Singular: return LpStatus::NumericalFailure;
      case Outcome::Infeasible: return LpStatus::Infeasible;
      case Outcome::Optimal: break;
    }
    return LpStatus::Optimal;
  };

  if (opt_.perturbation > 0.0) perturb();
  if (!refresh()) return finish(LpStatus::NumericalFailure);

  double scale = 1.0;
  for (double b : sf_.rhs) scale = std::max(scale, std::abs(b));
  bool has_artificial = false;
  for (std::size_t v : basic_) has_artificial |= sf_.kind[v] == VarKind::Artificial;
  if (has_artificial) {
    const Outcome o = optimize(true);
    if (o == Outcome::Limit || o == Outcome::Singular) return finish(status_of(o));
    if (artificial_mass() > opt_.feasibility_tolerance * scale)
      return finish(LpStatus::Infeasible);
    if (!drive_out_artificials()) return finish(LpStatus::NumericalFailure);
    compute_duals(sf_.cost, d2_);
  }

  // Optimize on the perturbed data, then repair and re-optimize on the
  // exact data until both primal and dual feasibility hold.
  for (int round = 0; round < 4; ++round) {
    Outcome o = optimize(false);
    if (o != Outcome::Optimal) return finish(status_of(o));
    o = dual_cleanup();
    if (o != Outcome::Optimal) return finish(status_of(o));
    bool dual_feasible = true;
    for (std::size_t j = 0; j < nv_ && dual_feasible; ++j) {
      if (pos_[j] >= 0 || dead_[j]) continue;
      const double dj = d2_[j];
      if (dj < -opt_.optimality_tolerance ||
          (sf_.is_free[j] && dj > opt_.optimality_tolerance))
        dual_feasible = false;
    }
    if (dual_feasible) return finish(LpStatus::Optimal);
  }
  return finish(LpStatus::IterationLimit);
}

}  // namespace

LpSolution SimplexSolver::solve(const LpProblem& problem) const {
  problem.check();
  Revised solver(problem, options_);
  return solver.run(problem);
}

LpSolution solve(const LpProblem& problem) { return SimplexSolver().solve(problem); }

}  // namespace ggospa
