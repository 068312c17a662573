#pragma once

#include <vector>

#include "pcg/hsmm.hpp"

namespace pcg::detail {

/// Recording resampled to the processing rate and band-limited, plus its
/// homomorphic envelope at that rate.
struct PreparedRecording {
    Signal filtered;
    std::vector<double> homomorphic;
    double source_duration_s = 0.0;
};

PreparedRecording prepare_recording(const Signal& sig, const EnvelogramConfig& config);
Envelograms envelograms_from(const PreparedRecording& rec, const EnvelogramConfig& config, bool normalize);
RatesEstimate rates_from(const std::vector<double>& envelope, double fs, RateBand band, double significance);

}  // namespace pcg::detail
