#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "qspectral/indicator.hpp"

namespace qspectral {

struct ClimbConfig {
    int restarts = 10;
    std::uint64_t seed = 0;
    int shots = 0;      // 0 = exact objective, otherwise n_M per evaluation
    int max_iters = 0;  // 0 = default k * N * 4
};

struct ClimbResult {
    IndicatorMatrix indicator;
    Partition partition;
    double value = 0.0;
};

/// Steepest-ascent local search over single-point reassignments (moves
/// that would empty a cluster are pruned), best over restarts. In shot
/// mode a move is accepted only if the estimated improvement exceeds
/// 2/sqrt(n_M).
ClimbResult hill_climb(const DensityMatrix& rho, int k, const ClimbConfig& cfg);

/// Optional per-move trace hook: (restart, iteration, point, new_cluster,
/// value after the move).
using ClimbTrace =
    std::function<void(int, int, int, int, double)>;

ClimbResult hill_climb(const DensityMatrix& rho, int k, const ClimbConfig& cfg,
                       const ClimbTrace& trace);

}  // namespace qspectral
