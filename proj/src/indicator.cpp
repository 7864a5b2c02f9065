#include "qspectral/indicator.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qspectral {

IndicatorMatrix build_indicator(const Partition& partition) {
    const int n = partition.size();
    const int k = partition.k;
    std::vector<int> sizes(k, 0);
    for (int label : partition.labels) {
        if (label < 0 || label >= k)
            throw std::invalid_argument("build_indicator: label out of range");
        ++sizes[label];
    }
    for (int c = 0; c < k; ++c)
        if (sizes[c] == 0)
            throw std::invalid_argument("build_indicator: empty cluster " +
                                        std::to_string(c));

    IndicatorMatrix ind;
    ind.sizes = sizes;
    ind.x = Eigen::MatrixXd::Zero(n, k);
    for (int i = 0; i < n; ++i)
        ind.x(i, partition.labels[i]) = 1.0 / std::sqrt(double(sizes[partition.labels[i]]));
    return ind;
}

Partition extract_partition(const IndicatorMatrix& indicator) {
    Partition p;
    p.k = static_cast<int>(indicator.x.cols());
    p.labels.resize(indicator.x.rows());
    for (Eigen::Index i = 0; i < indicator.x.rows(); ++i) {
        int label = -1;
        for (Eigen::Index j = 0; j < indicator.x.cols(); ++j)
            if (indicator.x(i, j) != 0.0) {
                label = static_cast<int>(j);
                break;
            }
        if (label < 0)
            throw std::invalid_argument("extract_partition: zero row " +
                                        std::to_string(i));
        p.labels[i] = label;
    }
    return p;
}

double objective(const DensityMatrix& rho, const IndicatorMatrix& indicator) {
    if (rho.size() != indicator.x.rows())
        throw std::invalid_argument("objective: dimension mismatch");
    // Tr(rho X X^T) = sum_j x_j^T rho x_j; rho is Hermitian so the value
    // is real.
    double value = 0.0;
    for (Eigen::Index j = 0; j < indicator.x.cols(); ++j) {
        const Eigen::VectorXcd col = indicator.x.col(j).cast<std::complex<double>>();
        value += (col.adjoint() * rho.rho * col)(0, 0).real();
    }
    return value;
}

double estimate_expectation(const DensityMatrix& rho,
                            const IndicatorMatrix& indicator, int n_shots,
                            std::uint64_t seed) {
    if (n_shots < 1)
        throw std::invalid_argument("estimate_expectation: n_shots must be >= 1");
    const double p = std::clamp(objective(rho, indicator), 0.0, 1.0);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution draw(p);
    int hits = 0;
    for (int s = 0; s < n_shots; ++s)
        if (draw(rng)) ++hits;
    return double(hits) / double(n_shots);
}

}  // namespace qspectral
