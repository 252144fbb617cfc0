#include "ggospa/graph.hpp"

#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "ggospa/error.hpp"

namespace ggospa {

namespace {

std::string edge_label(std::size_t k) { return "edge " + std::to_string(k); }

}  // namespace

std::span<const double> ValidatedGraph::attr(std::size_t i) const {
  const auto& a = graph_.nodes.at(i).attr;
  if (!a) return {};
  return {a->data(), a->size()};
}

ValidatedGraph validate(Graph g) {
  const std::size_t n = g.nodes.size();

  std::size_t attr_dim = 0;
  std::size_t with_attr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = g.nodes[i].attr;
    if (!a) continue;
    if (a->empty())
      throw Error(ErrorCode::AttributeDimensionMismatch,
                  "node " + std::to_string(i) + " has an empty attribute vector");
    if (with_attr == 0) {
      attr_dim = a->size();
    } else if (a->size() != attr_dim) {
      throw Error(ErrorCode::AttributeDimensionMismatch,
                  "node " + std::to_string(i) + " has dimension " +
                      std::to_string(a->size()) + ", expected " +
                      std::to_string(attr_dim));
    }
    for (double v : *a)
      if (!std::isfinite(v))
        throw Error(ErrorCode::NonFiniteValue,
                    "node " + std::to_string(i) + " attribute is not finite");
    ++with_attr;
  }
  if (with_attr != 0 && with_attr != n)
    throw Error(ErrorCode::MixedAttributePresence,
                std::to_string(with_attr) + " of " + std::to_string(n) +
                    " nodes carry attributes");

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    Edge& e = g.edges[k];
    if (e.u >= n || e.v >= n)
      throw Error(ErrorCode::IndexOutOfRange,
                  edge_label(k) + " references node " +
                      std::to_string(std::max(e.u, e.v)) + " in a graph of " +
                      std::to_string(n) + " nodes");
    if (!std::isfinite(e.weight))
      throw Error(ErrorCode::NonFiniteValue, edge_label(k) + " weight is not finite");
    if (g.weighted) {
      if (e.weight == 0.0)
        throw Error(ErrorCode::ZeroWeightEdge, edge_label(k) + " has zero weight");
    } else {
      if (e.u == e.v)
        throw Error(ErrorCode::SelfLoopInUnweighted,
                    edge_label(k) + " is a self-loop");
      if (e.weight != 1.0)
        throw Error(ErrorCode::InconsistentWeight,
                    edge_label(k) + " has weight " + std::to_string(e.weight) +
                        " in an unweighted graph");
    }
    if (!g.directed && e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(e.u, e.v).second)
      throw Error(ErrorCode::DuplicateEdge,
                  edge_label(k) + " (" + std::to_string(e.u) + "," +
                      std::to_string(e.v) + ") appears more than once");
  }

  ValidatedGraph out;
  out.adjacency_ = Matrix(n, n);
  for (const Edge& e : g.edges) {
    out.adjacency_(e.u, e.v) = e.weight;
    if (!g.directed) out.adjacency_(e.v, e.u) = e.weight;
  }
  out.attr_dim_ = attr_dim;
  out.graph_ = std::move(g);
  return out;
}

const Matrix& adjacency_matrix(const ValidatedGraph& g) { return g.adjacency(); }

namespace {

void check_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n)
    throw Error(ErrorCode::InvalidPermutation,
                "permutation has length " + std::to_string(perm.size()) +
                    ", graph has " + std::to_string(n) + " nodes");
  std::vector<bool> hit(n, false);
  for (std::size_t p : perm) {
    if (p >= n || hit[p])
      throw Error(ErrorCode::InvalidPermutation, "not a bijection on node indices");
    hit[p] = true;
  }
}

}  // namespace

ValidatedGraph permute_graph(const ValidatedGraph& g,
                             std::span<const std::size_t> perm) {
  const std::size_t n = g.size();
  check_permutation(perm, n);
  Graph out;
  out.directed = g.directed();
  out.weighted = g.weighted();
  out.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.nodes[perm[i]] = g.graph().nodes[i];
  out.edges.reserve(g.graph().edges.size());
  for (const Edge& e : g.graph().edges)
    out.edges.push_back({perm[e.u], perm[e.v], e.weight});
  return validate(std::move(out));
}

Matrix permutation_matrix(std::span<const std::size_t> perm) {
  check_permutation(perm, perm.size());
  Matrix p(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) p(perm[i], i) = 1.0;
  return p;
}

ValidatedGraph strip_attributes(const ValidatedGraph& g) {
  Graph out = g.graph();
  for (Node& node : out.nodes) node.attr.reset();
  return validate(std::move(out));
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::AttributeDimensionMismatch,
                "attribute vectors of dimension " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()));
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

BaseMetric euclidean_metric() { return &euclidean_distance; }

BaseMetric zero_metric() {
  return [](std::span<const double>, std::span<const double>) { return 0.0; };
}

}  // namespace ggospa
