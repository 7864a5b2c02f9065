#include "qspectral/metrics.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace qspectral {

namespace {

double choose2(double v) { return v * (v - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("adjusted_rand_index: size mismatch");
    const double n = static_cast<double>(a.size());
    if (n < 2) return 1.0;

    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint[{a[i], b[i]}] += 1.0;
        rows[a[i]] += 1.0;
        cols[b[i]] += 1.0;
    }

    double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (const auto& [key, count] : joint) sum_ij += choose2(count);
    for (const auto& [key, count] : rows) sum_a += choose2(count);
    for (const auto& [key, count] : cols) sum_b += choose2(count);

    const double expected = sum_a * sum_b / choose2(n);
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return 1.0;  // both partitions trivial
    return (sum_ij - expected) / (max_index - expected);
}

}  // namespace qspectral
