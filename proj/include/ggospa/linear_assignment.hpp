#pragma once

#include <cstddef>
#include <vector>

#include "ggospa/matrix.hpp"

namespace ggospa {

/// Minimum-cost perfect assignment on a square cost matrix via shortest
/// augmenting paths (Hungarian method with potentials), O(n^3).
/// Returns col_of_row. Among equal-cost columns the lowest index wins
/// during each augmentation.
std::vector<std::size_t> solve_linear_assignment(const Matrix& cost);

}  // namespace ggospa
