#include "ggospa/metric.hpp"

#include <string>

#include "ggospa/error.hpp"

namespace ggospa {

PreparedPair prepare_pair(const ValidatedGraph& x, const ValidatedGraph& y,
                          const MetricParams& params, const MetricOptions& options,
                          bool directed) {
  check_params(params);
  if (x.directed() != y.directed())
    throw Error(ErrorCode::ModeMismatch, "one graph is directed and the other is not");
  if (x.directed() && !directed)
    throw Error(ErrorCode::ModeMismatch,
                "directed graphs require the directed edge mismatch cost");

  bool use_attributes = !options.ignore_attributes;
  if (use_attributes) {
    // Empty graphs are compatible with either mode.
    const bool x_attr = x.has_attributes();
    const bool y_attr = y.has_attributes();
    if (x.size() > 0 && y.size() > 0 && x_attr != y_attr)
      throw Error(ErrorCode::ModeMismatch,
                  "one graph has node attributes and the other does not");
    if (x_attr && y_attr && x.attribute_dim() != y.attribute_dim())
      throw Error(ErrorCode::ModeMismatch,
                  "attribute dimensions differ (" + std::to_string(x.attribute_dim()) +
                      " vs " + std::to_string(y.attribute_dim()) + ")");
    use_attributes = x_attr || y_attr;
  }

  PreparedPair out;
  out.d = cost_matrix(x, y, use_attributes ? options.base : zero_metric(), params.c,
                      params.p);
  out.ax = &x.adjacency();
  out.ay = &y.adjacency();
  out.directed = directed;
  return out;
}

}  // namespace ggospa
