#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ggospa {

/// Sparse linear row: sum of coef * x[index] compared against rhs.
struct LpRow {
  std::vector<std::pair<std::size_t, double>> terms;
  double rhs = 0.0;
};

/// min objective^T x subject to equality rows (= rhs), inequality rows
/// (>= rhs) and per-variable bounds lower[k] <= x[k] <= upper[k], where
/// lower may be -inf and upper may be +inf.
struct LpProblem {
  std::vector<double> objective;
  std::vector<LpRow> equalities;
  std::vector<LpRow> inequalities;
  std::vector<double> lower;
  std::vector<double> upper;

  static constexpr double kInf = std::numeric_limits<double>::infinity();

  std::size_t num_variables() const { return objective.size(); }
  /// Appends a variable and returns its index.
  std::size_t add_variable(double cost, double lo = 0.0, double hi = kInf);

  /// Throws InvalidParams on inconsistent dimensions, out-of-range indices,
  /// non-finite coefficients or empty bound intervals.
  void check() const;
};

/// NumericalFailure: the basis became singular and could not be refactored.
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, NumericalFailure };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;
  double objective = 0.0;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-10;
  /// 0 selects an automatic limit proportional to the problem size.
  std::size_t iteration_limit = 0;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_switch = 50;
  /// Relative size of the right-hand-side relaxation applied to inequality
  /// rows during the search. It is removed before the solution is reported;
  /// 0 disables it.
  double perturbation = 1e-7;
  /// Basis updates between LU refactorizations (revised solver only).
  std::size_t refactor_interval = 100;
};

/// Solver interface so an alternative (sparse, interior-point) backend can
/// replace the dense simplex without touching the metric code.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual LpSolution solve(const LpProblem& problem) const = 0;
};

/// Two-phase revised primal simplex. The basis is held as a sparse LU
/// factorization (SuiteSparse KLU) with product-form updates between
/// refactorizations, so an iteration costs time proportional to the
/// factor and constraint sparsity rather than rows x columns. Pricing is
/// Devex, falling back to Bland's rule after a run of degenerate pivots so
/// that the method cannot cycle. Free variables enter in either direction
/// and never leave the basis. Inequality rows are relaxed by tiny distinct
/// amounts during the search to avoid stalling; a dual simplex pass then
/// restores feasibility for the exact data. Deterministic.
class SimplexSolver final : public LpSolver {
 public:
  explicit SimplexSolver(SimplexOptions options = {}) : options_(options) {}
  LpSolution solve(const LpProblem& problem) const override;

 private:
  SimplexOptions options_;
};

/// Two-phase primal simplex on a dense compact tableau with steepest-edge
/// pricing and the same anti-stalling measures. Memory is rows x nonbasic
/// columns doubles, so it suits small problems; it is an independent
/// implementation used to cross-check SimplexSolver.
class TableauSimplexSolver final : public LpSolver {
 public:
  explicit TableauSimplexSolver(SimplexOptions options = {}) : options_(options) {}
  LpSolution solve(const LpProblem& problem) const override;

 private:
  SimplexOptions options_;
};

/// Convenience wrapper around SimplexSolver with default options.
LpSolution solve(const LpProblem& problem);

/// Largest constraint or bound violation of x, each row scaled by the
/// largest of 1 and its maximum absolute coefficient.
double max_violation(const LpProblem& problem, const std::vector<double>& x);

/// Writes the problem in CPLEX LP text format. Names default to x0, x1, ...
std::string write_lp_format(const LpProblem& problem,
                            const std::vector<std::string>& names = {});

}  // namespace ggospa
