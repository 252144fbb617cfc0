#include "ggospa/params.hpp"

#include <cmath>
#include <sstream>

#include "ggospa/error.hpp"

namespace ggospa {

void check_params(const MetricParams& params, bool require_epsilon) {
  std::ostringstream why;
  if (!(std::isfinite(params.c) && params.c > 0.0)) why << "c must be finite and > 0; ";
  // p = inf has no computable formula, so it is rejected rather than guessed.
  if (!(std::isfinite(params.p) && params.p >= 1.0)) why << "p must be finite and >= 1; ";
  if (require_epsilon && !(std::isfinite(params.epsilon) && params.epsilon > 0.0))
    why << "epsilon must be finite and > 0; ";
  if (!require_epsilon && !(std::isfinite(params.epsilon) && params.epsilon >= 0.0))
    why << "epsilon must be finite and >= 0; ";
  const std::string msg = why.str();
  if (!msg.empty()) throw Error(ErrorCode::InvalidParams, msg.substr(0, msg.size() - 2));
}

double power(double x, double p) { return p == 1.0 ? x : std::pow(x, p); }

double root(double x, double p) {
  if (x <= 0.0) return 0.0;
  return p == 1.0 ? x : std::pow(x, 1.0 / p);
}

}  // namespace ggospa
