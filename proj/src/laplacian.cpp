#include "qspectral/laplacian.hpp"

#include <cmath>

namespace qspectral {

Laplacian build_laplacian(const SimilarityGraph& graph) {
    const int n = graph.n_nodes;
    Laplacian lap;
    lap.d = graph.d;
    lap.raw = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [i, j] : graph.edges) {
        lap.raw(i, j) -= 1.0;
        lap.raw(j, i) -= 1.0;
        lap.raw(i, i) += 1.0;
        lap.raw(j, j) += 1.0;
    }
    lap.rescaled = lap.raw / (2.0 * graph.d);
    return lap;
}

int max_row_nonzeros(const Eigen::MatrixXd& m, double tol) {
    int worst = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        int count = 0;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (std::abs(m(i, j)) > tol) ++count;
        worst = std::max(worst, count);
    }
    return worst;
}

}  // namespace qspectral
