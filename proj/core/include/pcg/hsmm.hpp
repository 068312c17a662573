#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcg/events.hpp"
#include "pcg/io.hpp"
#include "pcg/logistic.hpp"
#include "pcg/signal.hpp"

namespace pcg {

/// Cycle order S1 -> systole -> S2 -> diastole -> S1.
enum class HsmmState : int { S1 = 0, systole = 1, S2 = 2, diastole = 3 };
inline constexpr std::size_t kHsmmStates = 4;
std::string_view to_string(HsmmState state);

struct EnvelogramConfig {
    double processing_fs = 1000.0;
    double feature_rate = 50.0;
    int prefilter_order = 2;
    double prefilter_low_hz = 25.0;
    double prefilter_high_hz = 400.0;   // lowered to 0.45 fs when needed
    double homomorphic_cutoff_hz = 8.0;
    double band_low_hz = 25.0;
    double band_high_hz = 120.0;
    double band_window_s = 0.05;
    std::string dwt_wavelet = "db4";
    int dwt_level = 3;
};

/// Four channels (homomorphic, hilbert, band_power, dwt) at feature_rate.
struct Envelograms {
    std::vector<std::string> names;
    std::vector<std::vector<double>> channels;  // channel x frame
    double feature_rate = 0.0;

    std::size_t frames() const noexcept { return channels.empty() ? 0 : channels.front().size(); }
    std::vector<double> frame(std::size_t t) const;
};

/// Frame count is floor(duration * feature_rate). Each channel is z-scored
/// over the recording unless `normalize` is false; a constant channel throws
/// "degenerate channel".
Envelograms extract_envelograms(const Signal& sig, const EnvelogramConfig& config = {}, bool normalize = true);

struct RateBand {
    double min_bpm = 110.0;
    double max_bpm = 200.0;
    static RateBand fetal() { return {110.0, 200.0}; }
    static RateBand adult() { return {50.0, 120.0}; }
};

struct RatesEstimate {
    double heart_rate_bpm = 0.0;
    double systole_fraction = 0.0;
};

/// From the mean-removed autocorrelation of the homomorphic envelope: the beat
/// lag is the highest local maximum inside the band, the S1-S2 lag the highest
/// local maximum in [0.1 s, beat / 2]. Both peaks must exceed `significance`;
/// otherwise throws "rate estimation failed".
RatesEstimate estimate_rates(const Signal& sig, RateBand band = {}, const EnvelogramConfig& config = {},
                             double significance = 0.3);

struct DurationParam {
    double mean_s = 0.0;
    double std_s = 0.0;
};

struct HsmmFeatureConfig {
    EnvelogramConfig envelograms;
    std::vector<std::string> channel_names;
    std::vector<double> norm_mean;  // applied after per-recording z-scoring
    std::vector<double> norm_std;
    RateBand rate_band;
    double rate_significance = 0.3;
};

struct HsmmModel {
    std::string version = "1";
    std::array<std::string, kHsmmStates> states{"S1", "systole", "S2", "diastole"};
    LogisticModel lr;
    std::vector<double> state_priors;
    std::array<DurationParam, kHsmmStates> durations;
    HsmmFeatureConfig feature_config;
};

struct HsmmTrainConfig {
    EnvelogramConfig envelograms;
    RateBand rate_band;
    double rate_significance = 0.3;
    double s1_half_width_s = 0.06;
    double s2_half_width_s = 0.05;
    double min_duration_std_s = 0.02;
    LogisticConfig logistic;
};

/// Per-frame states from point labels. S1 frames lie within s1_half_width_s
/// of an S1 label (S2 likewise), never past the midpoint to a neighbouring
/// label; frames between an S1 and the following S2 are systole, between an
/// S2 and the following S1 diastole. Frames before the first and after the
/// last label continue the cycle. Frames between two labels of the same kind
/// get -1. Frame t is centred at (t + 0.5) / feature_rate.
std::vector<int> label_frames(const LabelSet& labels, std::size_t frames, double feature_rate,
                              double s1_half_width_s = 0.06, double s2_half_width_s = 0.05);

/// Each recording needs at least three S1 -> S2 -> S1 cycles in its labels.
HsmmModel train(std::span<const Signal> signals, std::span<const LabelSet> labels,
                const HsmmTrainConfig& config = {});

struct HsmmDecoding {
    std::vector<int> states;  // one per frame
    RatesEstimate rates;
    std::array<std::pair<int, int>, kHsmmStates> duration_bounds;  // frames, inclusive
    SegmentSet events;
};

/// Duration-explicit Viterbi over the fixed cycle. Emissions are LR
/// posteriors divided by the state priors; durations are Gaussians truncated
/// to mean +/- 3 std, with systole/diastole means rescaled from the estimated
/// rates. The first and last segments may be cut by the recording edges.
HsmmDecoding decode_states(const HsmmModel& model, const Signal& sig);
SegmentSet decode(const HsmmModel& model, const Signal& sig);

std::string model_to_json(const HsmmModel& model);
HsmmModel model_from_json(std::string_view text);
void save_model(const HsmmModel& model, const std::filesystem::path& path);
HsmmModel load_model(const std::filesystem::path& path);

}  // namespace pcg
