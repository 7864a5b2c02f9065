#pragma once

#include <Eigen/Dense>

namespace qspectral {

/// Eigenpairs sorted ascending. Column j of `vectors` pairs with
/// `values[j]`; the first nonzero entry of each column is positive.
struct Spectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;

    int size() const { return static_cast<int>(values.size()); }
};

/// Full dense symmetric eigendecomposition. Throws if the input is not
/// symmetric (max asymmetry above 1e-10).
Spectrum eigen_decompose(const Eigen::MatrixXd& m);

/// k smallest eigenpairs by shifted inverse power iteration with
/// Gram-Schmidt deflation. Each pair satisfies ||L u - lambda u|| <= 1e-7;
/// failure to converge within the iteration cap throws, reporting the
/// residual.
Spectrum smallest_k_eigenpairs(const Eigen::MatrixXd& m, int k);

/// Flips column signs so the first entry above `tol` in magnitude is
/// positive.
void canonicalize_signs(Eigen::MatrixXd& vectors, double tol = 1e-12);

}  // namespace qspectral
