#pragma once

// Working form shared by the simplex implementations:
//   min cost^T z  s.t.  A z = rhs, rhs >= 0, z_k >= 0 or free,
// with an initial basis whose matrix is diagonal.

#include <cstddef>
#include <vector>

#include "ggospa/lp_solver.hpp"

namespace ggospa::detail {

enum class VarKind : unsigned char { Structural, Slack, Artificial };

struct StandardForm {
  std::size_t rows = 0;
  std::size_t structurals = 0;  // leading variables, one per LpProblem variable
  std::size_t vars = 0;

  std::vector<VarKind> kind;
  std::vector<bool> is_free;
  std::vector<double> cost;

  // Column-major A.
  std::vector<std::size_t> col_start;
  std::vector<std::size_t> row_index;
  std::vector<double> value;

  std::vector<double> rhs;
  std::vector<std::size_t> basis;    // initial basic variable of each row
  std::vector<double> basis_coef;    // its coefficient in that row

  // x_k = offset_k + sign_k * z_k for structurals.
  std::vector<double> offset;
  std::vector<double> sign;

  /// Maps a working-form point back to the original variables.
  std::vector<double> recover(const std::vector<double>& z) const;
};

StandardForm standardize(const LpProblem& problem);

}  // namespace ggospa::detail
