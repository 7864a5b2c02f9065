#include "qspectral/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qspectral {

namespace {

void check_symmetric(const Eigen::MatrixXd& m) {
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10)
        throw std::invalid_argument("eigen solver: matrix not symmetric (max asymmetry " +
                                    std::to_string(asym) + ")");
}

}  // namespace

void canonicalize_signs(Eigen::MatrixXd& vectors, double tol) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
            const double v = vectors(i, j);
            if (std::abs(v) > tol) {
                if (v < 0) vectors.col(j) = -vectors.col(j);
                break;
            }
        }
    }
}

Spectrum eigen_decompose(const Eigen::MatrixXd& m) {
    check_symmetric(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigen_decompose: solver failed");
    Spectrum s;
    s.values = solver.eigenvalues();
    s.vectors = solver.eigenvectors();
    canonicalize_signs(s.vectors);
    return s;
}

Spectrum smallest_k_eigenpairs(const Eigen::MatrixXd& m, int k) {
    check_symmetric(m);
    const int n = static_cast<int>(m.rows());
    if (k < 1 || k >= n)
        throw std::invalid_argument("smallest_k_eigenpairs: need 1 <= k < n");

    constexpr int kMaxIters = 10000;
    constexpr double kResidualTol = 1e-7;

    Spectrum s;
    s.values.resize(k);
    s.vectors.resize(n, k);

    double prev_value = 0.0;
    for (int j = 0; j < k; ++j) {
        // Shift just below the expected eigenvalue; deflation against the
        // converged pairs steers the iteration to the next one up.
        double shift = (j == 0 ? 0.0 : prev_value) - 1e-6;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(
            m - shift * Eigen::MatrixXd::Identity(n, n));

        Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
        x(j % n) += 0.5;  // break symmetry between degenerate candidates
        double lambda = 0.0;
        double residual = 0.0;
        bool converged = false;
        for (int iter = 0; iter < kMaxIters; ++iter) {
            x = lu.solve(x);
            for (int p = 0; p < j; ++p)
                x -= s.vectors.col(p).dot(x) * s.vectors.col(p);
            const double norm = x.norm();
            if (norm < 1e-300) {
                // Deflation annihilated the iterate; restart from a shifted
                // basis vector.
                x = Eigen::VectorXd::Unit(n, (iter + j) % n);
                continue;
            }
            x /= norm;
            lambda = x.dot(m * x);
            residual = (m * x - lambda * x).norm();
            if (residual <= kResidualTol) {
                converged = true;
                break;
            }
            if (iter > 0 && iter % 50 == 0) {
                shift = lambda - 1e-6;
                lu.compute(m - shift * Eigen::MatrixXd::Identity(n, n));
            }
        }
        if (!converged)
            throw std::runtime_error(
                "smallest_k_eigenpairs: no convergence for pair " +
                std::to_string(j) + ", residual " + std::to_string(residual));
        s.values(j) = lambda;
        s.vectors.col(j) = x;
        prev_value = lambda;
    }

    // Degenerate eigenvalues can converge out of order; sort the prefix.
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return s.values(a) < s.values(b); });
    Spectrum sorted;
    sorted.values.resize(k);
    sorted.vectors.resize(n, k);
    for (int i = 0; i < k; ++i) {
        sorted.values(i) = s.values(idx[i]);
        sorted.vectors.col(i) = s.vectors.col(idx[i]);
    }
    canonicalize_signs(sorted.vectors);
    return sorted;
}

}  // namespace qspectral
