#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "pcg/events.hpp"
#include "pcg/hsmm.hpp"
#include "pcg/io.hpp"
#include "pcg/signal.hpp"

namespace pcg {

enum class SegmentMethod { naive, adaptive, hsmm };

std::string_view to_string(SegmentMethod method);
std::optional<SegmentMethod> parse_segment_method(std::string_view text);

struct DetectorConfig {
    double lpf_cutoff_hz = 8.0;    // homomorphic envelope
    double min_distance_s = 0.27;  // naive
    double height = 0.3;           // naive
    double drop_fraction = 0.5;    // adaptive
    double boundary_level = 0.6;
};

/// Envelope peak detection followed by boundary search. Naive detections are
/// reported as S1; adaptive ones are sorted into S1/S2 when there are at least
/// three. The hsmm method needs `model`.
SegmentSet segment_recording(const Signal& sig, SegmentMethod method, const HsmmModel* model = nullptr,
                             const DetectorConfig& config = {});

/// ".wav" files are read as WAV; anything else needs a raw format.
Signal load_signal(const std::filesystem::path& path, const std::optional<RawFormatSpec>& raw = std::nullopt);

}  // namespace pcg
