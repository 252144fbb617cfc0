#pragma once

namespace ggospa {

/// Hyperparameters of the graph GOSPA metric. Defaults are the usual
/// experimental settings p = 1, c = 3, epsilon = 1.
struct MetricParams {
  double c = 3.0;        ///< unassignment cost scale, > 0
  double epsilon = 1.0;  ///< edge mismatch penalty scale, > 0
  double p = 1.0;        ///< exponent, 1 <= p < inf
};

/// Throws InvalidParams unless c > 0, 1 <= p < inf and, when
/// require_epsilon is set, epsilon > 0 (all finite).
void check_params(const MetricParams& params, bool require_epsilon = true);

/// x^p with the p == 1 case kept exact.
double power(double x, double p);
/// x^(1/p) with the p == 1 case kept exact.
double root(double x, double p);

}  // namespace ggospa
