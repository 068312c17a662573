#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>

#include "pcg/events.hpp"
#include "pcg/io.hpp"
#include "pcg/signal.hpp"

namespace pcg {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

struct SynthConfig {
    double fs = 1000.0;
    double duration_s = 60.0;
    MeanStd heart_rate_bpm{138.0, 2.0};
    MeanStd s1_s2_ms{181.0, 10.0};
    MeanStd s2_s1_ms{257.0, 12.0};
    double s1_freq_hz = 40.0;
    double s1_amplitude = 1.0;
    double s1_sigma_ms = 20.0;
    double s2_freq_hz = 60.0;
    double s2_amplitude = 0.6;
    double s2_sigma_ms = 15.0;
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 1;
};

struct SynthOutput {
    Signal signal;
    Signal clean;
    LabelSet labels;       // burst centres
    SegmentSet segments;   // centre -/+ 2.5 sigma
};

/// Gabor-burst heart sounds: a * exp(-(t-c)^2 / 2 sigma^2) * cos(2 pi f (t-c)).
/// Beat length is 60 / N(hr) s, the S1-S2 gap is N(s1_s2) ms and the S2-S1 gap
/// is the remainder. Only beats whose bursts lie fully inside the recording are
/// emitted. White Gaussian noise is added at snr_db (none when infinite).
/// Throws pcg::Error when the configured gaps disagree with the heart rate.
SynthOutput generate(const SynthConfig& cfg);

/// Writes <stem>.wav (float32) and <stem>.csv (Location;Value).
void write_synth(const SynthOutput& out, const std::filesystem::path& stem);

}  // namespace pcg
