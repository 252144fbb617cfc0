// Small worked examples for individual operations.

#include <doctest.h>

#include <cmath>

#include "ggospa/decomposition.hpp"
#include "ggospa/error.hpp"
#include "ggospa/exact.hpp"
#include "ggospa/graph_io.hpp"
#include "ggospa/lp_metric.hpp"
#include "support.hpp"

using namespace ggospa;

TEST_SUITE("graph") {

TEST_CASE("unweighted edge with a fractional weight is rejected") {
  Graph g;
  g.nodes.resize(2);
  g.edges = {{0, 1, 0.5}};
  CHECK_THROWS_AS(validate(g), Error);
}

TEST_CASE("weighted triangle adjacency") {
  const ValidatedGraph g = test::fixture("weighted_triangle");
  const Matrix& a = g.adjacency();
  const double expected[3][3] = {{0, 0.3, 0.7}, {0.3, 0, 0.5}, {0.7, 0.5, 0}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(a(i, j) == expected[i][j]);
}

TEST_CASE("empty graph document") {
  const ValidatedGraph g =
      parse_graph_json(R"({"directed":false,"weighted":false,"nodes":[],"edges":[]})");
  CHECK(g.size() == 0);
  CHECK(entrywise_l1(g.adjacency()) == 0.0);
}

}  // TEST_SUITE

TEST_SUITE("assignment") {

TEST_CASE("assignment matrices for partial and empty assignments") {
  const Matrix full = vector_to_matrix(AssignmentVector{{1, 2, 3}}, 3, 3).w;
  CHECK(full.block(0, 0, 3, 3) == Matrix::identity(3));
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(full(3, k) == 0.0);
    CHECK(full(k, 3) == 0.0);
  }
  const Matrix partial = vector_to_matrix(AssignmentVector{{1, 2, 0}}, 3, 3).w;
  CHECK(partial(2, 3) == 1.0);
  CHECK(partial(3, 2) == 1.0);
  const Matrix none = vector_to_matrix(AssignmentVector{{0, 0}}, 2, 1).w;
  CHECK(none(0, 1) == 1.0);
  CHECK(none(1, 1) == 1.0);
  CHECK(none(2, 0) == 1.0);
}

TEST_CASE("cost matrix for one point pair") {
  const std::vector<std::vector<double>> x = {{0.0, 0.0}};
  const std::vector<std::vector<double>> y = {{3.0, 4.0}};
  const CostMatrix d1 = cost_matrix(x, y, euclidean_metric(), 3.0, 1.0);
  CHECK(d1.d(0, 0) == doctest::Approx(5.0));
  CHECK(d1.d(0, 1) == 1.5);
  CHECK(d1.d(1, 0) == 1.5);
  CHECK(d1.d(1, 1) == 0.0);
  const CostMatrix d2 = cost_matrix(x, y, euclidean_metric(), 3.0, 2.0);
  CHECK(d2.d(0, 0) == doctest::Approx(25.0));
  CHECK(d2.d(0, 1) == 4.5);
  const std::vector<std::vector<double>> none;
  const CostMatrix d0 = cost_matrix(none, none, euclidean_metric(), 3.0, 1.0);
  CHECK(d0.d.rows() == 1);
  CHECK(d0.d(0, 0) == 0.0);
}

TEST_CASE("entrywise 1-norm") {
  Matrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = -2;
  a(1, 0) = 3;
  a(1, 1) = -4;
  CHECK(entrywise_l1(a) == 10.0);
  CHECK(entrywise_l1(Matrix(3, 3)) == 0.0);
}

}  // TEST_SUITE

TEST_SUITE("exact") {

TEST_CASE("edge mismatch on the triangle fixtures") {
  const MetricParams params;
  const auto x = test::fixture("triangle");
  const AssignmentVector identity{{1, 2, 3}};
  // One edge missing in Y.
  CHECK(edge_mismatch_count(identity, x.adjacency(), test::fixture("path_shifted").adjacency(),
                            params) == doctest::Approx(1.0));
  CHECK(edge_mismatch_count(identity, x.adjacency(), x.adjacency(), params) == 0.0);
  // Third node dropped: three edges touch unassigned nodes, one in X and two
  // in Y, plus no mismatch among the kept pair.
  const AssignmentVector drop{{1, 2, 0}};
  CHECK(edge_mismatch_count(drop, x.adjacency(), test::fixture("path_far").adjacency(),
                            params) == doctest::Approx(1.5));
}

TEST_CASE("weighted edge mismatch under the full assignment") {
  const MetricParams params{3.0, 2.0, 1.0};
  const auto x = test::fixture("weighted_triangle");
  const auto y = test::fixture("weighted_triangle_shifted");
  const Matrix w = vector_to_matrix(AssignmentVector{{1, 2, 3}}, 3, 3).w;
  CHECK(edge_mismatch_matrix(w, x.adjacency(), y.adjacency(), params, false) ==
        doctest::Approx(0.3 * params.epsilon));
}

TEST_CASE("composing identity assignments") {
  const AssignmentMatrix id = vector_to_matrix(AssignmentVector{{1, 2, 3}}, 3, 3);
  CHECK(compose_assignments(id, id).w == id.w);
}

TEST_CASE("identity distance is zero") {
  test::Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const bool directed = trial % 2 == 0;
    const auto x = test::random_graph(rng, test::random_shape(rng, 6, directed, trial % 3 == 0));
    CHECK(exact_graph_gospa(x, x, MetricParams{}, directed).value == 0.0);
  }
}

}  // TEST_SUITE

TEST_SUITE("lp_metric") {

TEST_CASE("empty graphs give an empty program") {
  const ValidatedGraph e = validate(Graph{});
  const LpEncoding enc = build_lp(e, e, MetricParams{}, false);
  CHECK(enc.num_w() == 0);
  CHECK(lp_graph_gospa(e, e, MetricParams{}).value == 0.0);
}

TEST_CASE("triangle program size") {
  const auto x = test::fixture("triangle");
  const LpEncoding enc = build_lp(x, test::fixture("triangle_shifted"), MetricParams{}, false);
  CHECK(enc.num_w() == 15);
  CHECK(enc.problem.num_variables() == 15 + 1 + 9);
  const LpEncoding dir = build_lp(test::fixture("directed_cycle"),
                                  test::fixture("directed_acyclic_shifted"), MetricParams{}, true);
  CHECK(dir.problem.num_variables() == 15 + 1 + 9 + 1 + 9);
}

TEST_CASE("relaxed self-distance is zero") {
  test::Rng rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const bool directed = trial % 2 == 0;
    const auto x = test::random_graph(rng, test::random_shape(rng, 8, directed, trial % 3 == 0));
    CHECK(lp_graph_gospa(x, x, MetricParams{}, directed).value == doctest::Approx(0.0));
  }
}

TEST_CASE("vanishing edge penalty recovers set GOSPA") {
  test::Rng rng(63);
  MetricParams params;
  params.epsilon = 1e-12;
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = test::random_graph(rng, test::random_shape(rng, 6, false, false));
    const auto y = test::random_graph(rng, test::random_shape(rng, 6, false, false));
    const double set = set_gospa(cost_matrix(x, y, euclidean_metric(), params.c, params.p)).value;
    CHECK(std::abs(lp_graph_gospa(x, y, params).value - set) < 1e-6);
  }
}

}  // TEST_SUITE

TEST_SUITE("lp_solver") {

TEST_CASE("single lower bound row") {
  LpProblem lp;
  lp.add_variable(1.0);
  lp.inequalities = {LpRow{{{0, 1.0}}, 2.0}};
  const LpSolution s = solve(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.values[0] == doctest::Approx(2.0));
  CHECK(s.objective == doctest::Approx(2.0));
}

TEST_CASE("optimum on a simplex edge") {
  LpProblem lp;
  lp.add_variable(-1.0);
  lp.add_variable(-1.0);
  lp.inequalities = {LpRow{{{0, -1.0}, {1, -1.0}}, -1.0}};
  const LpSolution s = solve(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(-1.0));
  CHECK(s.values[0] + s.values[1] == doctest::Approx(1.0));
}

}  // TEST_SUITE
