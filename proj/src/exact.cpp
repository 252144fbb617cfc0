#include "ggospa/exact.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ggospa/error.hpp"
#include "ggospa/summation.hpp"

namespace ggospa {

namespace {

// Raw edge mismatch terms for an assignment. Pair terms are weighted 1
// (undirected) or 2 (directed) relative to half-edge terms; the caller
// scales by eps^p/2 or eps^p/4 respectively.
class EdgeTerms {
 public:
  EdgeTerms(const Matrix& ax, const Matrix& ay, bool directed)
      : ax_(ax), ay_(ay), directed_(directed) {}

  // pi is 1-based; inverse[j] is the 1-based X node assigned to y_j or 0.
  template <typename Sink>
  void visit(const std::vector<std::size_t>& pi, const std::vector<std::size_t>& inverse,
             Sink&& sink) const {
    const std::size_t nx = ax_.rows();
    const std::size_t ny = ay_.rows();
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t k = 0; k < nx; ++k) {
        if (pi[i] != 0 && pi[k] != 0) {
          const double t = std::abs(ax_(i, k) - ay_(pi[i] - 1, pi[k] - 1));
          if (t != 0.0) {
            sink(t);
            if (directed_) sink(t);
          }
        } else if (pi[i] == 0 && pi[k] != 0) {
          if (ax_(i, k) != 0.0) sink(std::abs(ax_(i, k)));
          if (directed_ && ax_(k, i) != 0.0) sink(std::abs(ax_(k, i)));
        }
      }
    }
    for (std::size_t j = 0; j < ny; ++j) {
      if (inverse[j] != 0) continue;
      for (std::size_t l = 0; l < ny; ++l) {
        if (inverse[l] == 0) continue;
        if (ay_(j, l) != 0.0) sink(std::abs(ay_(j, l)));
        if (directed_ && ay_(l, j) != 0.0) sink(std::abs(ay_(l, j)));
      }
    }
  }

  double fast_sum(const std::vector<std::size_t>& pi,
                  const std::vector<std::size_t>& inverse) const {
    double s = 0.0;
    visit(pi, inverse, [&](double t) { s += t; });
    return s;
  }

  double canonical_sum(const std::vector<std::size_t>& pi,
                       const std::vector<std::size_t>& inverse) const {
    std::vector<double> terms;
    visit(pi, inverse, [&](double t) { terms.push_back(t); });
    return sorted_sum(std::move(terms));
  }

 private:
  const Matrix& ax_;
  const Matrix& ay_;
  bool directed_;
};

std::vector<std::size_t> inverse_of(const std::vector<std::size_t>& pi, std::size_t ny) {
  std::vector<std::size_t> inv(ny, 0);
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i] != 0) inv[pi[i] - 1] = i + 1;
  return inv;
}

double edge_scale(const MetricParams& params, bool directed) {
  return power(params.epsilon, params.p) / (directed ? 4.0 : 2.0);
}

// Depth-first enumeration over assignment vectors in lexicographic order,
// carrying the localisation cost of the assigned prefix.
class Enumerator {
 public:
  Enumerator(const PreparedPair& pair, const MetricParams& params)
      : d_(pair.d),
        edges_(*pair.ax, *pair.ay, pair.directed),
        edge_scale_(edge_scale(params, pair.directed)),
        half_(pair.d.unassigned_cost()),
        nx_(pair.ax->rows()),
        ny_(pair.ay->rows()),
        pi_(nx_, 0),
        inverse_(ny_, 0) {}

  void run() { descend(0, 0.0, 0); }

  const std::vector<std::size_t>& best_pi() const { return best_pi_; }
  double best_total() const { return best_canonical_; }

 private:
  void descend(std::size_t i, double loc_prefix, std::size_t assigned) {
    if (i == nx_) {
      leaf(loc_prefix, assigned);
      return;
    }
    pi_[i] = 0;
    descend(i + 1, loc_prefix, assigned);
    for (std::size_t j = 0; j < ny_; ++j) {
      if (inverse_[j] != 0) continue;
      pi_[i] = j + 1;
      inverse_[j] = i + 1;
      descend(i + 1, loc_prefix + d_.d(i, j), assigned + 1);
      inverse_[j] = 0;
    }
    pi_[i] = 0;
  }

  double node_part(double loc, std::size_t assigned) const {
    return loc + half_ * static_cast<double>(nx_ + ny_ - 2 * assigned);
  }

  void leaf(double loc_prefix, std::size_t assigned) {
    const double fast =
        node_part(loc_prefix, assigned) + edge_scale_ * edges_.fast_sum(pi_, inverse_);
    // Only candidates within rounding distance of the running minimum are
    // re-evaluated in order-independent form; the canonical value decides.
    if (fast > best_fast_ + 1e-9 * (1.0 + std::abs(best_fast_))) return;
    if (fast < best_fast_) best_fast_ = fast;
    std::vector<double> loc_terms;
    loc_terms.reserve(assigned);
    for (std::size_t k = 0; k < nx_; ++k)
      if (pi_[k] != 0) loc_terms.push_back(d_.d(k, pi_[k] - 1));
    const double canonical = node_part(sorted_sum(std::move(loc_terms)), assigned) +
                             edge_scale_ * edges_.canonical_sum(pi_, inverse_);
    if (canonical < best_canonical_) {
      best_canonical_ = canonical;
      best_pi_ = pi_;
    }
  }

  const CostMatrix& d_;
  EdgeTerms edges_;
  double edge_scale_;
  double half_;
  std::size_t nx_;
  std::size_t ny_;
  std::vector<std::size_t> pi_;
  std::vector<std::size_t> inverse_;
  double best_fast_ = std::numeric_limits<double>::infinity();
  double best_canonical_ = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_pi_;
};

}  // namespace

double edge_mismatch_count(const AssignmentVector& pi, const Matrix& ax,
                           const Matrix& ay, const MetricParams& params, bool directed) {
  if (ax.rows() != ax.cols() || ay.rows() != ay.cols() || pi.size() != ax.rows() ||
      !pi.valid_for(ay.rows()))
    throw Error(ErrorCode::DimensionMismatch,
                "assignment vector does not match adjacency dimensions");
  const EdgeTerms terms(ax, ay, directed);
  return edge_scale(params, directed) *
         terms.canonical_sum(pi.pi, inverse_of(pi.pi, ay.rows()));
}

double assignment_count(std::size_t n_x, std::size_t n_y) {
  // term_k = C(n_x,k) C(n_y,k) k!, term_{k+1} = term_k (n_x-k)(n_y-k)/(k+1).
  double term = 1.0;
  double total = 1.0;
  for (std::size_t k = 0; k < std::min(n_x, n_y); ++k) {
    term *= static_cast<double>(n_x - k) * static_cast<double>(n_y - k) /
            static_cast<double>(k + 1);
    total += term;
  }
  return total;
}

MetricResult exact_graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                               const MetricParams& params, const MetricOptions& options) {
  return exact_graph_gospa(x, y, params, x.directed() || y.directed(), options);
}

MetricResult exact_graph_gospa(const ValidatedGraph& x, const ValidatedGraph& y,
                               const MetricParams& params, bool directed,
                               const MetricOptions& options) {
  const PreparedPair pair = prepare_pair(x, y, params, options, directed);
  const double count = assignment_count(x.size(), y.size());
  if (count > options.enumeration_cap)
    throw Error(ErrorCode::EnumerationCapExceeded,
                std::to_string(static_cast<unsigned long long>(count)) +
                    " assignment vectors exceed the cap of " +
                    std::to_string(static_cast<unsigned long long>(options.enumeration_cap)));

  Enumerator search(pair, params);
  search.run();

  const AssignmentVector best{search.best_pi()};
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  const std::size_t assigned = best.assigned_count();
  const double half = pair.d.unassigned_cost();

  MetricResult out;
  out.mode = SolveMode::Exact;
  out.directed = directed;
  out.integral = true;
  out.assignment = vector_to_matrix(best, nx, ny);
  std::vector<double> loc_terms;
  for (std::size_t i = 0; i < nx; ++i)
    if (best.pi[i] != 0) loc_terms.push_back(pair.d.d(i, best.pi[i] - 1));
  out.decomposition.localisation_p = sorted_sum(std::move(loc_terms));
  out.decomposition.missed_p = half * static_cast<double>(nx - assigned);
  out.decomposition.false_p = half * static_cast<double>(ny - assigned);
  out.decomposition.edge_p =
      edge_mismatch_count(best, *pair.ax, *pair.ay, params, directed);
  out.value = root(search.best_total(), params.p);
  return out;
}

AssignmentMatrix compose_assignments(const AssignmentMatrix& w_xz,
                                     const AssignmentMatrix& w_zy) {
  if (w_xz.n_y() != w_zy.n_x())
    throw Error(ErrorCode::DimensionMismatch,
                "inner dimensions differ: " + std::to_string(w_xz.n_y()) + " vs " +
                    std::to_string(w_zy.n_x()));
  const std::size_t nx = w_xz.n_x();
  const std::size_t ny = w_zy.n_y();
  const Matrix core = w_xz.core() * w_zy.core();
  AssignmentMatrix out{Matrix(nx + 1, ny + 1), false};
  for (std::size_t i = 0; i < nx; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < ny; ++j) {
      out.w(i, j) = core(i, j);
      row += core(i, j);
    }
    out.w(i, ny) = 1.0 - row;
  }
  for (std::size_t j = 0; j < ny; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < nx; ++i) col += core(i, j);
    out.w(nx, j) = 1.0 - col;
  }
  out.integral = is_integral(out.w, 0.0);
  return out;
}

}  // namespace ggospa
