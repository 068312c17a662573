#pragma once

#include <string>
#include <vector>

#include "pcg/events.hpp"
#include "pcg/signal.hpp"

namespace pcg {

struct DetectionSet {
    std::vector<double> peaks_s;     // strictly increasing
    std::vector<EventKind> kinds;    // empty or one per peak
    double sample_period_s = 0.0;    // resolution of the envelope the peaks came from
    std::vector<std::string> warnings;
};

/// Local maxima at or above height * max(env), accepted tallest first while
/// keeping every pair at least min_distance_s apart.
DetectionSet naive_detect(const Signal& env, double min_distance_s = 0.270, double height = 0.3);

/// Scans local maxima left to right. A pending peak is confirmed once the
/// envelope falls below drop_fraction of its value; a taller maximum seen
/// before that replaces it. A peak still pending at the end is confirmed.
DetectionSet adaptive_detect(const Signal& env, double drop_fraction = 0.5);

/// Labels peaks S1/S2 by comparing each inter-peak delay with the previous
/// one (the first with the next): the shorter one spans S1 -> S2. Each peak
/// takes the majority of the votes from its two flanking delays. A peak with
/// split votes continues the S1/S2 alternation of the nearest decided peak.
/// Delays equal within one sample period cast no vote; peaks left without a
/// kind stay unknown and a warning is recorded.
DetectionSet sort_peaks(const DetectionSet& det);

/// Start/end where the envelope drops below level_fraction of each peak,
/// linearly interpolated, clipped to the signal and to the midpoints between
/// neighbouring peaks.
SegmentSet peaks_to_boundaries(const Signal& env, const DetectionSet& det, double level_fraction = 0.6);

}  // namespace pcg
