#include <doctest.h>

#include <cmath>

#include "ggospa/decomposition.hpp"
#include "ggospa/error.hpp"
#include "ggospa/exact.hpp"
#include "ggospa/lp_metric.hpp"
#include "support.hpp"

using namespace ggospa;

TEST_SUITE("decomposition") {

TEST_CASE("components sum to the p-th power of the value") {
  test::Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const bool directed = trial % 2 == 1;
    const bool weighted = trial % 4 >= 2;
    const auto x = test::random_graph(rng, test::random_shape(rng, 5, directed, weighted));
    const auto y = test::random_graph(rng, test::random_shape(rng, 5, directed, weighted));
    const MetricParams params{3.0, 1.0, 1.0 + (trial % 4) * 0.5};
    for (SolveMode mode : {SolveMode::Exact, SolveMode::Lp}) {
      const MetricResult r = graph_gospa(x, y, params, mode, directed);
      const Decomposition& d = r.decomposition;
      CHECK(std::abs(std::pow(r.value, params.p) - d.total_p()) <=
            1e-12 * std::max(1.0, d.total_p()));
      CHECK(d.localisation_p >= 0.0);
      CHECK(d.missed_p >= 0.0);
      CHECK(d.false_p >= 0.0);
      CHECK(d.edge_p >= 0.0);
    }
  }
}

TEST_CASE("integral decomposition counts unassigned nodes") {
  test::Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = test::random_graph(rng, test::random_shape(rng, 5, false, false));
    const auto y = test::random_graph(rng, test::random_shape(rng, 5, false, false));
    const MetricParams params;
    const MetricResult r = exact_graph_gospa(x, y, params);
    const AssignmentVector pi = matrix_to_vector(r.assignment);
    const double half = params.c / 2.0;
    const auto assigned = static_cast<double>(pi.assigned_count());
    CHECK(r.decomposition.missed_p == doctest::Approx(half * (x.size() - assigned)));
    CHECK(r.decomposition.false_p == doctest::Approx(half * (y.size() - assigned)));
    CHECK(r.decomposition.edge_p ==
          doctest::Approx(edge_mismatch_count(pi, x.adjacency(), y.adjacency(), params)));
  }
}

TEST_CASE("decompose at a given assignment") {
  const auto x = test::fixture("triangle");
  const auto y = test::fixture("triangle_shifted");
  const AssignmentMatrix identity = vector_to_matrix(AssignmentVector{{1, 2, 3}}, 3, 3);
  const Decomposition d = decompose(identity, x, y, MetricParams{}, false);
  CHECK(d.localisation_p == doctest::Approx(0.3));
  CHECK(d.edge_p == 0.0);
  CHECK(d.missed_p == 0.0);

  const AssignmentMatrix none = vector_to_matrix(AssignmentVector{{0, 0, 0}}, 3, 3);
  const Decomposition u = decompose(none, x, y, MetricParams{}, false);
  CHECK(u.missed_p == doctest::Approx(4.5));
  CHECK(u.false_p == doctest::Approx(4.5));
  CHECK(u.edge_p == 0.0);

  const AssignmentMatrix wrong = vector_to_matrix(AssignmentVector{{1, 2}}, 2, 3);
  try {
    decompose(wrong, x, y, MetricParams{}, false);
    FAIL("shape mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("fractional assignment gives soft costs") {
  // Half of each X node goes to each Y node: every edge term cancels for
  // two isolated pairs and the location cost is averaged.
  const auto x = test::fixture("triangle");
  Matrix w(4, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) w(i, j) = 1.0 / 3.0;
  const CostMatrix d = cost_matrix(x, x, euclidean_metric(), 3.0, 1.0);
  const Decomposition dec = decompose(w, d, x.adjacency(), x.adjacency(), MetricParams{}, false);
  CHECK(dec.missed_p == 0.0);
  CHECK(dec.false_p == 0.0);
  CHECK(dec.edge_p == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dec.localisation_p > 0.0);
}

}  // TEST_SUITE
