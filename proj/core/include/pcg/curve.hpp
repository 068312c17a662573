#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace pcg {

/// Indices of local maxima. A flat top counts once, at its middle sample
/// (rounded down). With include_edges, a maximum touching either end of the
/// array is reported too.
std::vector<std::size_t> local_maxima(std::span<const double> y, bool include_edges = false);

/// Fractional index where y first falls below `level` walking left from
/// `peak`, linearly interpolated; 0 if it never does.
double crossing_before(std::span<const double> y, std::size_t peak, double level);

/// Same, walking right; y.size() - 1 if it never does.
double crossing_after(std::span<const double> y, std::size_t peak, double level);

/// Inclusive index range grown from `peak` one sample at a time toward the
/// larger neighbour (left on ties) until its sum reaches fraction * total.
std::pair<std::size_t, std::size_t> spread_interval(std::span<const double> y, std::size_t peak, double fraction);

/// First index whose running sum reaches half of the total.
std::size_t half_area_index(std::span<const double> y);

/// Index of the first maximum.
std::size_t argmax(std::span<const double> y);

}  // namespace pcg
