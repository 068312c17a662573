#include "pcg/curve.hpp"

#include <algorithm>

#include "pcg/error.hpp"

namespace pcg {

std::vector<std::size_t> local_maxima(std::span<const double> y, bool include_edges) {
    std::vector<std::size_t> peaks;
    const std::size_t n = y.size();
    if (n == 0) return peaks;
    if (n == 1) {
        if (include_edges) peaks.push_back(0);
        return peaks;
    }
    std::size_t i = 0;
    while (i < n) {
        // [i, j] is a run of equal values.
        std::size_t j = i;
        while (j + 1 < n && y[j + 1] == y[i]) ++j;
        const bool rises = i == 0 ? include_edges : y[i - 1] < y[i];
        const bool falls = j == n - 1 ? include_edges : y[j + 1] < y[j];
        const bool whole = i == 0 && j == n - 1;
        if (rises && falls && !whole) peaks.push_back((i + j) / 2);
        i = j + 1;
    }
    return peaks;
}

double crossing_before(std::span<const double> y, std::size_t peak, double level) {
    for (std::size_t i = peak; i-- > 0;) {
        if (y[i] < level) {
            const double span = y[i + 1] - y[i];
            return static_cast<double>(i) + (span > 0.0 ? (level - y[i]) / span : 1.0);
        }
    }
    return 0.0;
}

double crossing_after(std::span<const double> y, std::size_t peak, double level) {
    for (std::size_t i = peak + 1; i < y.size(); ++i) {
        if (y[i] < level) {
            const double span = y[i - 1] - y[i];
            return static_cast<double>(i - 1) + (span > 0.0 ? (y[i - 1] - level) / span : 0.0);
        }
    }
    return static_cast<double>(y.size() - 1);
}

std::pair<std::size_t, std::size_t> spread_interval(std::span<const double> y, std::size_t peak, double fraction) {
    if (peak >= y.size()) throw Error("spread interval: peak outside the curve");
    double total = 0.0;
    for (double v : y) total += v;
    const double target = fraction * total * (1.0 - 1e-12);
    std::size_t lo = peak, hi = peak;
    double area = y[peak];
    while (area < target && (lo > 0 || hi + 1 < y.size())) {
        const bool can_left = lo > 0;
        const bool can_right = hi + 1 < y.size();
        if (can_left && (!can_right || y[lo - 1] >= y[hi + 1])) {
            area += y[--lo];
        } else {
            area += y[++hi];
        }
    }
    return {lo, hi};
}

std::size_t half_area_index(std::span<const double> y) {
    double total = 0.0;
    for (double v : y) total += v;
    if (!(total > 0.0)) throw Error("zero-area curve");
    const double half = 0.5 * total;
    double run = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        run += y[i];
        if (run >= half) return i;
    }
    return y.size() - 1;
}

std::size_t argmax(std::span<const double> y) {
    if (y.empty()) throw Error("argmax of empty curve");
    return static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
}

}  // namespace pcg
