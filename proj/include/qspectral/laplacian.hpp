#pragma once

#include <Eigen/Dense>

#include "qspectral/graph.hpp"

namespace qspectral {

/// Graph Laplacian (degree minus adjacency) plus the copy rescaled by
/// 1/(2d), which pushes every eigenvalue into [0, 1).
struct Laplacian {
    Eigen::MatrixXd raw;       // N x N, symmetric PSD, zero row sums
    Eigen::MatrixXd rescaled;  // raw / (2d)
    int d = 2;

    int size() const { return static_cast<int>(raw.rows()); }
};

Laplacian build_laplacian(const SimilarityGraph& graph);

/// Max nonzero count over rows; at most d for a valid build.
int max_row_nonzeros(const Eigen::MatrixXd& m, double tol = 0.0);

}  // namespace qspectral
