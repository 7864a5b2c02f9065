#include "qspectral/hill_climb.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qspectral {

namespace {

// Cached quantities for O(1) move deltas: per-cluster indicator sums
// g_c = Re(rho) * 1_{C_c} and quadratic forms q_c = 1_{C_c}^T Re(rho) 1_{C_c}.
struct ClimbCache {
    Eigen::MatrixXd g;   // N x k
    Eigen::VectorXd q;   // k
    std::vector<int> sizes;

    void rebuild(const Eigen::MatrixXd& rho_re, const std::vector<int>& labels,
                 int k) {
        const int n = static_cast<int>(rho_re.rows());
        Eigen::MatrixXd membership = Eigen::MatrixXd::Zero(n, k);
        sizes.assign(k, 0);
        for (int i = 0; i < n; ++i) {
            membership(i, labels[i]) = 1.0;
            ++sizes[labels[i]];
        }
        g = rho_re * membership;
        q.resize(k);
        for (int c = 0; c < k; ++c) q(c) = membership.col(c).dot(g.col(c));
    }

    double value() const {
        double v = 0.0;
        for (int c = 0; c < static_cast<int>(sizes.size()); ++c)
            v += q(c) / sizes[c];
        return v;
    }

    // Objective change for moving point i from cluster a to cluster b.
    double move_delta(const Eigen::MatrixXd& rho_re, int i, int a, int b) const {
        const double rii = rho_re(i, i);
        const double qa = q(a) - 2.0 * g(i, a) + rii;
        const double qb = q(b) + 2.0 * g(i, b) + rii;
        return qa / (sizes[a] - 1) + qb / (sizes[b] + 1) - q(a) / sizes[a] -
               q(b) / sizes[b];
    }
};

Partition random_partition(int n, int k, std::mt19937_64& rng) {
    Partition p;
    p.k = k;
    p.labels.resize(n);
    std::uniform_int_distribution<int> pick(0, k - 1);
    for (int i = 0; i < n; ++i) p.labels[i] = pick(rng);
    // Guarantee no empty cluster by planting one point per label.
    for (int c = 0; c < k; ++c) {
        bool found = false;
        for (int i = 0; i < n; ++i)
            if (p.labels[i] == c) {
                found = true;
                break;
            }
        if (!found) {
            std::uniform_int_distribution<int> spot(0, n - 1);
            int i = spot(rng);
            while (true) {
                // Only steal from a cluster with more than one member.
                int count = 0;
                for (int x : p.labels)
                    if (x == p.labels[i]) ++count;
                if (count > 1) break;
                i = spot(rng);
            }
            p.labels[i] = c;
        }
    }
    return p;
}

}  // namespace

ClimbResult hill_climb(const DensityMatrix& rho, int k, const ClimbConfig& cfg) {
    return hill_climb(rho, k, cfg, ClimbTrace{});
}

ClimbResult hill_climb(const DensityMatrix& rho, int k, const ClimbConfig& cfg,
                       const ClimbTrace& trace) {
    const int n = rho.size();
    if (k < 1) throw std::invalid_argument("hill_climb: k must be >= 1");
    if (n < k) throw std::invalid_argument("hill_climb: fewer points than clusters");
    if (cfg.restarts < 1)
        throw std::invalid_argument("hill_climb: restarts must be >= 1");

    const Eigen::MatrixXd rho_re = rho.rho.real();
    const int max_iters = cfg.max_iters > 0 ? cfg.max_iters : k * n * 4;
    const double noise_margin =
        cfg.shots > 0 ? 2.0 / std::sqrt(double(cfg.shots)) : 1e-12;

    ClimbResult best;
    bool have_best = false;
    double best_exact = 0.0;

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        std::mt19937_64 rng(cfg.seed + 7919ull * restart);
        Partition p = random_partition(n, k, rng);
        ClimbCache cache;
        cache.rebuild(rho_re, p.labels, k);

        std::uint64_t shot_seed = cfg.seed ^ (0x9e3779b97f4a7c15ull * (restart + 1));
        auto measured = [&](double exact) {
            if (cfg.shots <= 0) return exact;
            std::mt19937_64 shot_rng(shot_seed++);
            std::bernoulli_distribution draw(std::clamp(exact, 0.0, 1.0));
            int hits = 0;
            for (int s = 0; s < cfg.shots; ++s)
                if (draw(shot_rng)) ++hits;
            return double(hits) / double(cfg.shots);
        };

        for (int iter = 0; iter < max_iters; ++iter) {
            const double current = measured(cache.value());
            int move_point = -1;
            int move_to = -1;
            double best_gain = noise_margin;
            for (int i = 0; i < n; ++i) {
                const int a = p.labels[i];
                if (cache.sizes[a] == 1) continue;  // would empty the cluster
                for (int b = 0; b < k; ++b) {
                    if (b == a) continue;
                    const double candidate =
                        measured(cache.value() + cache.move_delta(rho_re, i, a, b));
                    const double gain = candidate - current;
                    if (gain > best_gain) {
                        best_gain = gain;
                        move_point = i;
                        move_to = b;
                    }
                }
            }
            if (move_point < 0) break;
            p.labels[move_point] = move_to;
            cache.rebuild(rho_re, p.labels, k);
            if (trace)
                trace(restart, iter, move_point, move_to, cache.value());
        }

        const double exact_value = cache.value();
        const double reported =
            cfg.shots > 0 ? measured(exact_value) : exact_value;
        // Restarts compare on the exact landscape value; ties keep the
        // earliest restart.
        if (!have_best || exact_value > best_exact + 1e-15) {
            best.partition = p;
            best.indicator = build_indicator(p);
            best.value = reported;
            best_exact = exact_value;
            have_best = true;
        }
    }
    return best;
}

}  // namespace qspectral
