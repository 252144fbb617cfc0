#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "ggospa/graph_io.hpp"

namespace ggospa::test {

ValidatedGraph random_graph(Rng& rng, const GraphShape& shape) {
  static constexpr double kWeights[] = {1.0, 2.0, 0.5, -1.0, 3.0};
  std::uniform_real_distribution<double> coord(0.0, shape.box);
  std::bernoulli_distribution coin(shape.p_edge);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kWeights) - 1);

  Graph g;
  g.directed = shape.directed;
  g.weighted = shape.weighted;
  g.nodes.resize(shape.n);
  if (shape.attributes)
    for (Node& node : g.nodes) node.attr = std::vector<double>{coord(rng), coord(rng)};
  for (std::size_t u = 0; u < shape.n; ++u)
    for (std::size_t v = shape.directed ? 0 : u; v < shape.n; ++v) {
      if (u == v && !shape.weighted) continue;
      if (coin(rng)) g.edges.push_back({u, v, shape.weighted ? kWeights[pick(rng)] : 1.0});
    }
  return validate(std::move(g));
}

GraphShape random_shape(Rng& rng, std::size_t max_n, bool directed, bool weighted) {
  GraphShape s;
  s.n = std::uniform_int_distribution<std::size_t>(0, max_n)(rng);
  s.p_edge = std::uniform_real_distribution<double>(0.0, 0.8)(rng);
  s.directed = directed;
  s.weighted = weighted;
  return s;
}

ValidatedGraph as_directed(const ValidatedGraph& g) {
  Graph raw = g.graph();
  raw.directed = true;
  std::vector<Edge> edges;
  for (const Edge& e : raw.edges) {
    edges.push_back(e);
    if (e.u != e.v) edges.push_back({e.v, e.u, e.weight});
  }
  raw.edges = std::move(edges);
  return validate(std::move(raw));
}

ValidatedGraph fixture(const std::string& name) {
  return read_graph_file(std::string(GGOSPA_FIXTURE_DIR) + "/" + name + ".json");
}

namespace {

double node_distance(const ValidatedGraph& x, std::size_t i, const ValidatedGraph& y,
                     std::size_t j, bool ignore_attributes) {
  if (ignore_attributes || !x.has_attributes()) return 0.0;
  const auto a = x.attr(i);
  const auto b = y.attr(j);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

// Edge values rebuilt from the edge list; undirected edges fill both slots.
std::vector<std::vector<double>> edge_table(const ValidatedGraph& g) {
  std::vector<std::vector<double>> t(g.size(), std::vector<double>(g.size(), 0.0));
  for (const Edge& e : g.graph().edges) {
    t[e.u][e.v] = e.weight;
    if (!g.directed()) t[e.v][e.u] = e.weight;
  }
  return t;
}

}  // namespace

double counting_objective_p(const ValidatedGraph& x, const ValidatedGraph& y,
                            const std::vector<std::size_t>& pi, const MetricParams& params,
                            bool directed, bool ignore_attributes) {
  const double cp = std::pow(params.c, params.p);
  const double ep = std::pow(params.epsilon, params.p);
  std::vector<bool> y_used(y.size(), false);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (pi[i] == 0) {
      total += cp / 2.0;
    } else {
      y_used[pi[i] - 1] = true;
      total += std::pow(node_distance(x, i, y, pi[i] - 1, ignore_attributes), params.p);
    }
  }
  for (std::size_t j = 0; j < y.size(); ++j)
    if (!y_used[j]) total += cp / 2.0;

  // Assigned ordered pairs, diagonal included for self-loops.
  const auto ex = edge_table(x);
  const auto ey = edge_table(y);
  double mismatch = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < x.size(); ++k)
      if (pi[i] != 0 && pi[k] != 0)
        mismatch += std::abs(ex[i][k] - ey[pi[i] - 1][pi[k] - 1]);
  total += ep / 2.0 * mismatch;

  // Half-assigned edges: one assigned and one unassigned endpoint.
  std::vector<bool> x_assigned(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) x_assigned[i] = pi[i] != 0;
  const double half = directed ? ep / 4.0 : ep / 2.0;
  for (const Edge& e : x.graph().edges)
    if (x_assigned[e.u] != x_assigned[e.v]) total += half * std::abs(e.weight);
  for (const Edge& e : y.graph().edges)
    if (y_used[e.u] != y_used[e.v]) total += half * std::abs(e.weight);
  return total;
}

std::vector<std::vector<std::size_t>> all_assignments(std::size_t n_x, std::size_t n_y) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pi(n_x, 0);
  std::vector<bool> used(n_y + 1, false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n_x) {
      out.push_back(pi);
      return;
    }
    for (std::size_t j = 0; j <= n_y; ++j) {
      if (j > 0 && used[j]) continue;
      pi[i] = j;
      if (j > 0) used[j] = true;
      rec(i + 1);
      if (j > 0) used[j] = false;
    }
  };
  rec(0);
  return out;
}

BruteForce brute_force_graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                                   const MetricParams& params, bool directed,
                                   bool ignore_attributes) {
  BruteForce best;
  best.value_p = std::numeric_limits<double>::infinity();
  for (const auto& pi : all_assignments(x.size(), y.size())) {
    const double v = counting_objective_p(x, y, pi, params, directed, ignore_attributes);
    if (v < best.value_p) best = {v, pi};
  }
  return best;
}

double brute_force_set_gospa_p(const std::vector<std::vector<double>>& vx,
                               const std::vector<std::vector<double>>& vy, double c,
                               double p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& pi : all_assignments(vx.size(), vy.size())) {
    double total = 0.0;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < vx.size(); ++i) {
      if (pi[i] == 0) continue;
      ++assigned;
      double s = 0.0;
      for (std::size_t k = 0; k < vx[i].size(); ++k) {
        const double d = vx[i][k] - vy[pi[i] - 1][k];
        s += d * d;
      }
      total += std::pow(std::sqrt(s), p);
    }
    total += std::pow(c, p) / 2.0 * static_cast<double>(vx.size() + vy.size() - 2 * assigned);
    best = std::min(best, total);
  }
  return best;
}

std::optional<double> vertex_enumeration(const LpProblem& lp, double tol) {
  const std::size_t n = lp.num_variables();
  // Candidate active constraints as rows a^T x = b.
  struct Row {
    Eigen::VectorXd a;
    double b;
  };
  auto dense = [&](const LpRow& r) {
    Row row{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), r.rhs};
    for (const auto& [k, v] : r.terms) row.a[static_cast<Eigen::Index>(k)] += v;
    return row;
  };
  std::vector<Row> eq;
  for (const LpRow& r : lp.equalities) eq.push_back(dense(r));
  std::vector<Row> cand;
  for (const LpRow& r : lp.inequalities) cand.push_back(dense(r));
  for (std::size_t k = 0; k < n; ++k) {
    for (double bound : {lp.lower[k], lp.upper[k]}) {
      if (!std::isfinite(bound)) continue;
      Row row{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), bound};
      row.a[static_cast<Eigen::Index>(k)] = 1.0;
      cand.push_back(row);
    }
  }

  auto feasible = [&](const Eigen::VectorXd& x) {
    for (const Row& r : eq)
      if (std::abs(r.a.dot(x) - r.b) > tol) return false;
    for (const LpRow& r : lp.inequalities) {
      double s = 0.0;
      for (const auto& [k, v] : r.terms) s += v * x[static_cast<Eigen::Index>(k)];
      if (s < r.rhs - tol) return false;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double v = x[static_cast<Eigen::Index>(k)];
      if (v < lp.lower[k] - tol || v > lp.upper[k] + tol) return false;
    }
    return true;
  };

  Eigen::MatrixXd eq_mat(static_cast<Eigen::Index>(eq.size()), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < eq.size(); ++i) eq_mat.row(static_cast<Eigen::Index>(i)) = eq[i].a;
  const std::size_t eq_rank =
      eq.empty() ? 0 : static_cast<std::size_t>(Eigen::FullPivLU<Eigen::MatrixXd>(eq_mat).rank());
  const std::size_t pick = n - eq_rank;
  if (pick > cand.size()) return std::nullopt;

  std::optional<double> best;
  std::vector<std::size_t> chosen;
  const Eigen::Index rows = static_cast<Eigen::Index>(eq.size() + pick);
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (chosen.size() == pick) {
      Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(n));
      Eigen::VectorXd b(rows);
      Eigen::Index r = 0;
      for (const Row& row : eq) {
        a.row(r) = row.a;
        b[r++] = row.b;
      }
      for (std::size_t c : chosen) {
        a.row(r) = cand[c].a;
        b[r++] = cand[c].b;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (static_cast<std::size_t>(lu.rank()) < n) return;
      const Eigen::VectorXd x = lu.solve(b);
      if ((a * x - b).cwiseAbs().maxCoeff() > tol || !feasible(x)) return;
      double obj = 0.0;
      for (std::size_t k = 0; k < n; ++k) obj += lp.objective[k] * x[static_cast<Eigen::Index>(k)];
      if (!best || obj < *best) best = obj;
      return;
    }
    for (std::size_t c = start; c + (pick - chosen.size()) <= cand.size(); ++c) {
      chosen.push_back(c);
      rec(c + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace ggospa::test
