#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qspectral/laplacian.hpp"

namespace qspectral {

struct Partition {
    std::vector<int> labels;  // values in [0, k)
    int k = 1;

    int size() const { return static_cast<int>(labels.size()); }
};

/// Lloyd iteration with k-means++ style seeding. Deterministic under
/// `seed`; an empty-cluster event re-seeds that centroid at the point
/// farthest from its assigned centroid.
Partition kmeans(const Eigen::MatrixXd& rows, int k, std::uint64_t seed);

/// Within-cluster sum of squared distances for a given assignment.
double kmeans_objective(const Eigen::MatrixXd& rows, const Partition& p);

/// Classical spectral clustering: rows of the k lowest eigenvectors of
/// the Laplacian, clustered by k-means.
Partition classical_spectral_cluster(const Laplacian& lap, int k,
                                     std::uint64_t seed);

}  // namespace qspectral
