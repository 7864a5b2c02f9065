#pragma once

#include <vector>

namespace qspectral {

/// Adjusted Rand index between two labelings of the same points.
/// Permutation-invariant; 1.0 for identical partitions, ~0 for random.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace qspectral
