#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "qspectral/kmeans.hpp"
#include "qspectral/qsim.hpp"

namespace qspectral {

/// Column-orthonormal cluster indicator: row i carries 1/sqrt(s_j) in the
/// column of its cluster and zeros elsewhere.
struct IndicatorMatrix {
    Eigen::MatrixXd x;        // N x k
    std::vector<int> sizes;   // s_j = |C_j|, all >= 1
};

IndicatorMatrix build_indicator(const Partition& partition);

Partition extract_partition(const IndicatorMatrix& indicator);

/// Tr(rho X X^T), in [0, 1].
double objective(const DensityMatrix& rho, const IndicatorMatrix& indicator);

/// Shot-model estimate: mean of n_shots Bernoulli draws with success
/// probability Tr(rho X X^T). Deterministic under seed.
double estimate_expectation(const DensityMatrix& rho,
                            const IndicatorMatrix& indicator, int n_shots,
                            std::uint64_t seed);

}  // namespace qspectral
