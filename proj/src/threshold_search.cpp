#include "qspectral/threshold_search.hpp"

#include <stdexcept>
#include <string>

namespace qspectral {

double binary_search_threshold(const CountingFn& counting, int k0, double lo,
                               double hi, double delta_floor,
                               ThresholdSearchState* state) {
    if (!(lo < hi))
        throw std::invalid_argument("binary_search_threshold: need lo < hi");
    if (delta_floor <= 0.0)
        throw std::invalid_argument("binary_search_threshold: delta_floor must be > 0");

    ThresholdSearchState local;
    ThresholdSearchState& s = state ? *state : local;
    s.lo = lo;
    s.hi = hi;
    s.target_k = k0;
    s.delta_floor = delta_floor;
    s.history.clear();

    auto probe = [&](double lambda) {
        const int count = counting(lambda);
        s.history.emplace_back(lambda, count);
        return count;
    };

    if (probe(hi) == k0) return hi;

    int lo_count = -1, hi_count = -1;
    while (hi - lo > delta_floor) {
        const double mid = 0.5 * (lo + hi);
        const int count = probe(mid);
        if (count == k0) return mid;
        if (count < k0) {
            lo = mid;
            lo_count = count;
        } else {
            hi = mid;
            hi_count = count;
        }
    }
    throw std::runtime_error(
        "binary_search_threshold: k0=" + std::to_string(k0) +
        " unreachable; bracket [" + std::to_string(lo) + ", " +
        std::to_string(hi) + "] has counts (" + std::to_string(lo_count) + ", " +
        std::to_string(hi_count) + ")");
}

}  // namespace qspectral
