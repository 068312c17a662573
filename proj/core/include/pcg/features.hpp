#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcg/events.hpp"
#include "pcg/signal.hpp"
#include "pcg/table.hpp"

namespace pcg {

/// A region of a recording. `signal` and `envelope` cover the whole
/// recording; [first, last] is the inclusive sample range of the event.
struct EventWindow {
    std::span<const double> signal;
    std::span<const double> envelope;
    double fs = 0.0;
    std::size_t first = 0;
    std::size_t last = 0;
    double start_s = 0.0;
    double peak_s = 0.0;
    double end_s = 0.0;

    std::size_t size() const noexcept { return last - first + 1; }
    std::span<const double> samples() const { return signal.subspan(first, size()); }
    std::span<const double> env() const { return envelope.subspan(first, size()); }
};

/// Samples ceil(start * fs) .. floor(end * fs), clipped to the recording.
/// Throws pcg::Error if the event is empty, reversed or outside the signal.
EventWindow make_window(std::span<const double> signal, std::span<const double> envelope, double fs,
                        const SegmentEvent& event);

// Time domain. Results in ms unless noted.
double time_delta(const EventWindow& w);
struct RampTime {
    double onset_ms = 0.0;
    double exit_ms = 0.0;
};
RampTime ramp_time(const EventWindow& w);
double peak_spread(const EventWindow& w, double area_fraction = 0.6);
double peak_width(const EventWindow& w, double level_fraction = 0.6);
double peak_centroid(const EventWindow& w);
/// Sign changes per ms; zeros keep the previous sign.
double zero_crossing_rate(const EventWindow& w);

// Frequency domain, in Hz.
struct Spectrum {
    std::vector<double> magnitude;
    double bin_hz = 0.0;
};
/// |DFT| of the Hann-windowed samples zero padded to pad_factor * n.
Spectrum magnitude_spectrum(std::span<const double> x, double fs, std::size_t pad_factor = 4);

double max_frequency(const Spectrum& s);
double spectral_spread(const Spectrum& s, double area_fraction = 0.6);
double spectral_width(const Spectrum& s, double level_fraction = 0.6);
double spectral_centroid(const Spectrum& s);

double max_frequency(const EventWindow& w);
double spectral_spread(const EventWindow& w, double area_fraction = 0.6);
double spectral_width(const EventWindow& w, double level_fraction = 0.6);
double spectral_centroid(const EventWindow& w);

// Wavelet based.
struct CwtFeatureConfig {
    double f_low_hz = 30.0;
    double f_high_hz = 250.0;
    std::size_t scale_count = 32;
    std::string wavelet = "morlet";
    // Local maxima below this fraction of the largest one are numerical ripple.
    double maxima_floor = 1e-3;

    std::vector<double> scales(double fs) const;
};

struct CwtMax {
    double pseudofrequency_hz = 0.0;
    double scale = 0.0;
    double time_ms = 0.0;
};
CwtMax cwt_max(const EventWindow& w, const CwtFeatureConfig& cfg = {});
/// Distance in (scale index, time index) grid units between the two largest
/// 8-neighbourhood local maxima of |W|; 0 with fewer than two maxima at or
/// above cfg.maxima_floor times the largest.
double cwt_peak_distance(const EventWindow& w, const CwtFeatureConfig& cfg = {});
/// Local maxima of a scales x time magnitude grid, as (row, column) pairs
/// sorted by decreasing value.
std::vector<std::pair<std::size_t, std::size_t>> grid_maxima(const std::vector<std::vector<double>>& grid);

struct DwtFeatureConfig {
    int level = 4;
    int depth = 5;
    std::string wavelet = "db6";
};
/// Detail coefficients of cfg.level mapped onto the samples of the event.
std::vector<double> dwt_window_coefficients(const EventWindow& w, const DwtFeatureConfig& cfg = {});
double dwt_intensity(const EventWindow& w, const DwtFeatureConfig& cfg = {});
/// sign(S) * sqrt(|S|) with S = -sum x^2 log2 x^2.
double dwt_entropy(const EventWindow& w, const DwtFeatureConfig& cfg = {});
double dwt_intensity(std::span<const double> coefficients);
double dwt_entropy(std::span<const double> coefficients);

// Complexity based.
double katz_fd(std::span<const double> x);
double katz_fd(const EventWindow& w);

struct LyapunovConfig {
    int embedding_dim = 4;
    int delay = 0;           // 0: first zero crossing of the autocorrelation
    int min_separation = 0;  // 0: mean period from the spectral centroid
    int steps = 10;
};
/// Largest Lyapunov exponent, Rosenstein style, per sample.
double lyapunov_max(std::span<const double> x, const LyapunovConfig& cfg = {});
double lyapunov_max(const EventWindow& w, const LyapunovConfig& cfg = {});

// Groups.
struct FeatureSpec {
    std::string label;    // column name
    std::string feature;  // one of feature_names()
    Params params;
};

struct FeatureGroup {
    std::vector<FeatureSpec> features;

    /// Appends a feature; the label defaults to the feature name. Throws
    /// pcg::Error on an unknown feature, bad parameter or duplicate label.
    FeatureGroup& add(std::string feature, Params params = {}, std::string label = {});
};

/// Names accepted by FeatureGroup::add, in table order.
const std::vector<std::string>& feature_names();

/// All 18 features with default parameters.
FeatureGroup default_feature_group();

struct FeatureColumn {
    std::string name;
    std::vector<double> values;        // NaN where missing
    std::vector<std::string> missing;  // reason, empty when present
};

struct FeatureTable {
    std::vector<FeatureColumn> columns;
    std::size_t event_count = 0;

    const FeatureColumn& column(std::string_view name) const;
};

/// Event columns (kind, start_s, peak_s, end_s) followed by the features.
Table to_table(const FeatureTable& table, const SegmentSet& events);

/// Computes every feature of the group on every event. Failures on one event
/// become missing values; they never abort the table. The envelope defaults
/// to the Hilbert envelope of `sig`.
FeatureTable run_group(const FeatureGroup& group, const SegmentSet& events, const Signal& sig);
FeatureTable run_group(const FeatureGroup& group, const SegmentSet& events, const Signal& sig,
                       const Signal& envelope);

/// Systole, diastole or whole-cycle regions built from sorted S1/S2 events.
/// Returns the S1 or S2 events themselves for those kinds.
SegmentSet derive_regions(const SegmentSet& segs, EventKind kind);

}  // namespace pcg
