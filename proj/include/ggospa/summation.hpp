#pragma once

#include <span>
#include <vector>

namespace ggospa {

/// Sum after sorting ascending. The result depends only on the multiset of
/// terms, not their order, which keeps metric values bitwise symmetric.
double sorted_sum(std::vector<double> terms);

/// Pairwise (cascade) summation in index order; deterministic and more
/// accurate than a running sum for Monte-Carlo reductions.
double pairwise_sum(std::span<const double> terms);

}  // namespace ggospa
