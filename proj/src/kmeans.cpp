#include "qspectral/kmeans.hpp"

#include <limits>
#include <random>
#include <stdexcept>

#include "qspectral/spectrum.hpp"

namespace qspectral {

namespace {

// Move one point into each empty cluster, taking the point farthest from
// its centroid among clusters that keep at least one member. Guarantees
// every cluster is nonempty afterwards.
void repair_empty_clusters(const Eigen::MatrixXd& rows, Partition& p,
                           Eigen::MatrixXd& centroids) {
    const int n = static_cast<int>(rows.rows());
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(p.k);
    for (int i = 0; i < n; ++i) ++counts(p.labels[i]);
    for (int c = 0; c < p.k; ++c) {
        if (counts(c) > 0) continue;
        int far = -1;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            if (counts(p.labels[i]) <= 1) continue;
            const double dist =
                (rows.row(i) - centroids.row(p.labels[i])).squaredNorm();
            if (dist > best) {
                best = dist;
                far = i;
            }
        }
        --counts(p.labels[far]);
        p.labels[far] = c;
        counts(c) = 1;
        centroids.row(c) = rows.row(far);
    }
}

int nearest_centroid(const Eigen::MatrixXd& centroids,
                     const Eigen::RowVectorXd& point) {
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
        const double dist = (centroids.row(c) - point).squaredNorm();
        if (dist < best_dist) {
            best_dist = dist;
            best = static_cast<int>(c);
        }
    }
    return best;
}

// k-means++ style seeding: first centroid uniform, then each next one
// drawn with probability proportional to squared distance to the chosen
// set.
Eigen::MatrixXd seed_centroids(const Eigen::MatrixXd& rows, int k,
                               std::mt19937_64& rng) {
    const int n = static_cast<int>(rows.rows());
    Eigen::MatrixXd centroids(k, rows.cols());
    std::uniform_int_distribution<int> first(0, n - 1);
    centroids.row(0) = rows.row(first(rng));

    Eigen::VectorXd dist2(n);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int p = 0; p < c; ++p)
                best = std::min(best, (rows.row(i) - centroids.row(p)).squaredNorm());
            dist2(i) = best;
            total += best;
        }
        if (total <= 0.0) {
            centroids.row(c) = rows.row(first(rng));
            continue;
        }
        std::uniform_real_distribution<double> u(0.0, total);
        double target = u(rng);
        int pick = n - 1;
        for (int i = 0; i < n; ++i) {
            target -= dist2(i);
            if (target <= 0.0) {
                pick = i;
                break;
            }
        }
        centroids.row(c) = rows.row(pick);
    }
    return centroids;
}

}  // namespace

double kmeans_objective(const Eigen::MatrixXd& rows, const Partition& p) {
    Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(p.k, rows.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(p.k);
    for (int i = 0; i < p.size(); ++i) {
        centroids.row(p.labels[i]) += rows.row(i);
        counts(p.labels[i]) += 1.0;
    }
    for (int c = 0; c < p.k; ++c)
        if (counts(c) > 0) centroids.row(c) /= counts(c);
    double ssq = 0.0;
    for (int i = 0; i < p.size(); ++i)
        ssq += (rows.row(i) - centroids.row(p.labels[i])).squaredNorm();
    return ssq;
}

Partition kmeans(const Eigen::MatrixXd& rows, int k, std::uint64_t seed) {
    const int n = static_cast<int>(rows.rows());
    if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
    if (n < k) throw std::invalid_argument("kmeans: fewer points than clusters");

    std::mt19937_64 rng(seed);
    Eigen::MatrixXd centroids = seed_centroids(rows, k, rng);

    Partition p;
    p.k = k;
    p.labels.assign(n, 0);

    constexpr int kMaxIters = 300;
    for (int iter = 0; iter < kMaxIters; ++iter) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            const int c = nearest_centroid(centroids, rows.row(i));
            if (c != p.labels[i]) {
                p.labels[i] = c;
                changed = true;
            }
        }

        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, rows.cols());
        Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
        for (int i = 0; i < n; ++i) {
            sums.row(p.labels[i]) += rows.row(i);
            counts(p.labels[i]) += 1.0;
        }
        bool had_empty = false;
        for (int c = 0; c < k; ++c) {
            if (counts(c) > 0)
                centroids.row(c) = sums.row(c) / counts(c);
            else
                had_empty = true;
        }
        if (had_empty) {
            repair_empty_clusters(rows, p, centroids);
            changed = true;
        }
        if (!changed) break;
    }
    repair_empty_clusters(rows, p, centroids);
    return p;
}

Partition classical_spectral_cluster(const Laplacian& lap, int k,
                                     std::uint64_t seed) {
    const Spectrum spectrum = eigen_decompose(lap.raw);
    const Eigen::MatrixXd embedding = spectrum.vectors.leftCols(k);
    return kmeans(embedding, k, seed);
}

}  // namespace qspectral
