#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace qspectral {

/// Counting callable: threshold -> number of eigenvalues below it.
using CountingFn = std::function<int(double)>;

struct ThresholdSearchState {
    double lo = 0.0;
    double hi = 1.0;
    int target_k = 1;
    double delta_floor = 0.0;
    std::vector<std::pair<double, int>> history;  // (probe, count)
};

/// Bisection for a threshold with exactly k0 eigenvalues below it.
/// Requires counting monotone nondecreasing with counting(lo) <= k0 <=
/// counting(hi); throws when k0 is unreachable (degenerate gap), reporting
/// the bracketing counts.
double binary_search_threshold(const CountingFn& counting, int k0, double lo,
                               double hi, double delta_floor,
                               ThresholdSearchState* state = nullptr);

}  // namespace qspectral
