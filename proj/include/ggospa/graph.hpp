#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ggospa/matrix.hpp"

namespace ggospa {

struct Node {
  /// Real attribute vector; absent for attribute-free graphs.
  std::optional<std::vector<double>> attr;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Raw, unchecked graph description. Use validate() to obtain a
/// ValidatedGraph, which every metric routine requires.
struct Graph {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  bool directed = false;
  bool weighted = false;

  friend bool operator==(const Graph&, const Graph&) = default;
};

/// Immutable graph whose invariants have been checked, with its adjacency
/// matrix cached. Undirected edges are stored with u <= v.
class ValidatedGraph {
 public:
  ValidatedGraph() = default;

  const Graph& graph() const noexcept { return graph_; }
  const Matrix& adjacency() const noexcept { return adjacency_; }

  std::size_t size() const noexcept { return graph_.nodes.size(); }
  bool directed() const noexcept { return graph_.directed; }
  bool weighted() const noexcept { return graph_.weighted; }
  /// True when nodes carry attribute vectors. The empty graph reports false.
  bool has_attributes() const noexcept { return attr_dim_ > 0; }
  std::size_t attribute_dim() const noexcept { return attr_dim_; }

  std::span<const double> attr(std::size_t i) const;

  friend bool operator==(const ValidatedGraph& a, const ValidatedGraph& b) {
    return a.graph_ == b.graph_;
  }

 private:
  friend ValidatedGraph validate(Graph g);

  Graph graph_;
  Matrix adjacency_;
  std::size_t attr_dim_ = 0;
};

/// Checks graph invariants and builds the adjacency cache.
/// Throws Error with one of IndexOutOfRange, SelfLoopInUnweighted,
/// ZeroWeightEdge, InconsistentWeight, DuplicateEdge, NonFiniteValue,
/// MixedAttributePresence or AttributeDimensionMismatch.
ValidatedGraph validate(Graph g);

/// n x n adjacency matrix. Undirected edges set both (u,v) and (v,u);
/// weights are placed verbatim.
const Matrix& adjacency_matrix(const ValidatedGraph& g);

/// Relabels nodes so that old node i becomes new node perm[i].
/// Throws InvalidPermutation if perm is not a bijection on [0, n).
ValidatedGraph permute_graph(const ValidatedGraph& g,
                             std::span<const std::size_t> perm);

/// Permutation matrix P with P(perm[i], i) = 1, so that
/// adjacency(permute_graph(g, perm)) = P * adjacency(g) * P^T.
Matrix permutation_matrix(std::span<const std::size_t> perm);

/// Same graph with attributes dropped from every node.
ValidatedGraph strip_attributes(const ValidatedGraph& g);

/// Distance between attribute vectors. Must be a metric.
using BaseMetric =
    std::function<double(std::span<const double>, std::span<const double>)>;

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Default base metric.
BaseMetric euclidean_metric();
/// Constant-zero distance used for attribute-free graphs.
BaseMetric zero_metric();

}  // namespace ggospa
