#include <doctest.h>

#include <cmath>
#include <random>

#include "ggospa/error.hpp"
#include "ggospa/lp_solver.hpp"
#include "support.hpp"

using namespace ggospa;

namespace {

LpRow row(std::vector<std::pair<std::size_t, double>> terms, double rhs) {
  return LpRow{std::move(terms), rhs};
}

// Random bounded LP: box-bounded variables, a few random rows. Some rows are
// copies or sums of others to create degeneracy.
LpProblem random_lp(test::Rng& rng, std::size_t n, std::size_t m_eq, std::size_t m_ineq) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> small(-2, 2);
  LpProblem lp;
  for (std::size_t k = 0; k < n; ++k) lp.add_variable(std::round(u(rng)), small(rng) - 1.0, 4.0);
  // Equality rows pass through a known interior point so they stay feasible.
  std::vector<double> x0(n);
  for (double& v : x0) v = std::uniform_real_distribution<double>(-0.5, 2.5)(rng);
  for (std::size_t r = 0; r < m_eq; ++r) {
    LpRow eq;
    for (std::size_t k = 0; k < n; ++k)
      if (rng() % 2 == 0) eq.terms.emplace_back(k, static_cast<double>(small(rng)));
    for (const auto& [k, a] : eq.terms) eq.rhs += a * x0[k];
    lp.equalities.push_back(eq);
  }
  for (std::size_t r = 0; r < m_ineq; ++r) {
    LpRow in;
    for (std::size_t k = 0; k < n; ++k)
      if (rng() % 2 == 0) in.terms.emplace_back(k, static_cast<double>(small(rng)));
    double at = 0.0;
    for (const auto& [k, a] : in.terms) at += a * x0[k];
    in.rhs = rng() % 3 == 0 ? std::floor(at) : at - 1.0;
    lp.inequalities.push_back(in);
    if (rng() % 4 == 0) lp.inequalities.push_back(in);
  }
  return lp;
}

void check_optimal(const LpProblem& lp, const LpSolution& s, double expected) {
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(expected).epsilon(1e-8));
  CHECK(max_violation(lp, s.values) < 1e-8);
}

}  // namespace

TEST_SUITE("lp_solver") {

TEST_CASE("textbook problem") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18.
  LpProblem lp;
  lp.add_variable(-3.0);
  lp.add_variable(-5.0);
  lp.inequalities = {row({{0, -1.0}}, -4.0), row({{1, -2.0}}, -12.0),
                     row({{0, -3.0}, {1, -2.0}}, -18.0)};
  const SimplexSolver revised;
  const TableauSimplexSolver dense;
  for (const LpSolver* solver : {static_cast<const LpSolver*>(&revised),
                                 static_cast<const LpSolver*>(&dense)}) {
    const LpSolution s = solver->solve(lp);
    check_optimal(lp, s, -36.0);
    CHECK(s.values[0] == doctest::Approx(2.0));
    CHECK(s.values[1] == doctest::Approx(6.0));
  }
}

TEST_CASE("infeasible and unbounded problems") {
  LpProblem infeasible;
  infeasible.add_variable(1.0);
  infeasible.equalities = {row({{0, 1.0}}, -1.0)};
  CHECK(solve(infeasible).status == LpStatus::Infeasible);
  CHECK(TableauSimplexSolver().solve(infeasible).status == LpStatus::Infeasible);

  LpProblem unbounded;
  unbounded.add_variable(-1.0);
  unbounded.add_variable(0.0, -LpProblem::kInf);
  unbounded.inequalities = {row({{0, 1.0}, {1, -1.0}}, 0.0)};
  CHECK(solve(unbounded).status == LpStatus::Unbounded);
  CHECK(TableauSimplexSolver().solve(unbounded).status == LpStatus::Unbounded);
}

TEST_CASE("free variables and bounds") {
  // min |x - 2.5| via free x and t >= +-(x - 2.5), with x <= 1.
  LpProblem lp;
  const auto x = lp.add_variable(0.0, -LpProblem::kInf, 1.0);
  const auto t = lp.add_variable(1.0, -LpProblem::kInf);
  lp.inequalities = {row({{t, 1.0}, {x, -1.0}}, -2.5), row({{t, 1.0}, {x, 1.0}}, 2.5)};
  const LpSolution s = solve(lp);
  check_optimal(lp, s, 1.5);
  CHECK(s.values[x] == doctest::Approx(1.0));
  check_optimal(lp, TableauSimplexSolver().solve(lp), 1.5);
}

TEST_CASE("empty problem") {
  LpProblem lp;
  const LpSolution s = solve(lp);
  CHECK(s.status == LpStatus::Optimal);
  CHECK(s.objective == 0.0);
}

TEST_CASE("check rejects malformed problems") {
  LpProblem lp;
  lp.add_variable(1.0);
  lp.equalities = {row({{3, 1.0}}, 1.0)};
  CHECK_THROWS_AS(lp.check(), Error);
  LpProblem bounds;
  bounds.add_variable(1.0, 2.0, 1.0);
  CHECK_THROWS_AS(bounds.check(), Error);
}

TEST_CASE("random bounded problems agree with vertex enumeration") {
  test::Rng rng(31);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const LpProblem lp = random_lp(rng, n, trial % 3, 1 + trial % 4);
    const auto oracle = test::vertex_enumeration(lp);
    const LpSolution revised = SimplexSolver().solve(lp);
    const LpSolution dense = TableauSimplexSolver().solve(lp);
    if (!oracle) {
      CHECK(revised.status == LpStatus::Infeasible);
      CHECK(dense.status == LpStatus::Infeasible);
      continue;
    }
    ++optimal;
    check_optimal(lp, revised, *oracle);
    check_optimal(lp, dense, *oracle);
  }
  CHECK(optimal > 150);
}

TEST_CASE("degenerate transportation problems") {
  // Uniform supplies and demands with many tied costs: every basis is
  // heavily degenerate.
  test::Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + trial % 6;
    LpProblem lp;
    std::uniform_int_distribution<int> cost(0, 2);
    for (std::size_t k = 0; k < n * n; ++k) lp.add_variable(cost(rng));
    for (std::size_t i = 0; i < n; ++i) {
      LpRow r, c;
      for (std::size_t j = 0; j < n; ++j) {
        r.terms.emplace_back(i * n + j, 1.0);
        c.terms.emplace_back(j * n + i, 1.0);
      }
      r.rhs = c.rhs = 1.0;
      lp.equalities.push_back(r);
      lp.equalities.push_back(c);
    }
    const LpSolution a = SimplexSolver().solve(lp);
    const LpSolution b = TableauSimplexSolver().solve(lp);
    REQUIRE(a.status == LpStatus::Optimal);
    REQUIRE(b.status == LpStatus::Optimal);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-10));
    CHECK(max_violation(lp, a.values) < 1e-9);
    if (n <= 4) check_optimal(lp, a, *test::vertex_enumeration(lp));
  }
}

TEST_CASE("revised and dense solvers agree on larger sparse problems") {
  test::Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const LpProblem lp = random_lp(rng, 30, 5, 25);
    const LpSolution a = SimplexSolver().solve(lp);
    const LpSolution b = TableauSimplexSolver().solve(lp);
    REQUIRE(a.status == b.status);
    if (a.status == LpStatus::Optimal) {
      CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
      CHECK(max_violation(lp, a.values) < 1e-8);
    }
  }
}

TEST_CASE("LP text format") {
  LpProblem lp;
  lp.add_variable(1.0);
  lp.add_variable(-2.0, -LpProblem::kInf);
  lp.equalities = {row({{0, 1.0}, {1, 1.0}}, 1.0)};
  lp.inequalities = {row({{1, 1.0}}, -3.0)};
  const std::string text = write_lp_format(lp, {"a", "b"});
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("b free") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}

TEST_CASE("status names") {
  CHECK(to_string(LpStatus::Optimal) == "Optimal");
  CHECK(to_string(LpStatus::IterationLimit) == "IterationLimit");
}

}  // TEST_SUITE
