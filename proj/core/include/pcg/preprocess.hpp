#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcg/pipeline.hpp"
#include "pcg/signal.hpp"

namespace pcg {

enum class FilterKind { lowpass, highpass, bandpass };

std::string_view to_string(FilterKind kind);
std::optional<FilterKind> parse_filter_kind(std::string_view text);

struct FilterSpec {
    int order = 2;
    FilterKind kind = FilterKind::lowpass;
    std::vector<double> cutoff_hz;  // one edge, or {low, high} for bandpass
    bool zero_phase = true;
};

/// Second-order sections, each {b0, b1, b2, 1, a1, a2}.
struct SosFilter {
    std::vector<std::array<double, 6>> sections;
};

/// Digital Butterworth design via the bilinear transform with prewarped edges.
/// Throws pcg::Error for cutoffs outside (0, fs/2) or a bad order.
SosFilter design_butterworth(const FilterSpec& spec, double fs);

/// Complex response of a single pass at frequency f_hz.
std::complex<double> frequency_response(const SosFilter& filter, double f_hz, double fs);

std::vector<double> sosfilt(const SosFilter& filter, std::span<const double> x);
/// Forward-backward filtering with odd-extension padding and steady-state
/// initial conditions.
std::vector<double> sosfiltfilt(const SosFilter& filter, std::span<const double> x);

Signal butterworth(const Signal& sig, const FilterSpec& spec);

/// Polyphase rational resampling with a Kaiser windowed-sinc anti-aliasing
/// filter. Output length is round(N * target_fs / fs).
Signal resample(const Signal& sig, double target_fs);
std::vector<double> resample_samples(std::span<const double> x, double fs, double target_fs);

/// Magnitude of the FFT-based analytic signal.
Signal hilbert_envelope(const Signal& sig);
std::vector<double> hilbert_magnitude(std::span<const double> x);

/// exp(LPF(log(max(hilbert, eps)))) with eps = 1e-12 * max(max(hilbert), 1).
Signal homomorphic_envelope(const Signal& sig, double lpf_cutoff_hz = 8.0, int lpf_order = 1);

/// Soft-thresholds every detail level of a DWT. Without an explicit threshold
/// the universal threshold median(|D1|)/0.6745 * sqrt(2 ln N) is used.
Signal wavelet_denoise(const Signal& sig, int levels, std::string_view wavelet = "db6",
                       std::optional<double> threshold = std::nullopt);

/// Savitzky-Golay smoothing of each DWT detail level.
Signal savgol_smooth_levels(const Signal& sig, int levels, std::string_view wavelet = "db6",
                            int window = 10, int degree = 3);

/// Least-squares polynomial smoothing. Even windows fit samples
/// [i - window/2, i + window/2 - 1]; windows are shifted inward at the edges.
std::vector<double> savgol_smooth(std::span<const double> x, int window, int degree);

/// Builds a pipeline step by operation name. Known names: resample,
/// butterworth, hilbert_envelope, homomorphic_envelope, wavelet_denoise,
/// savgol_smooth_levels. Unknown names or parameters throw pcg::Error.
PipelineStep make_step(std::string_view name, const Params& params);

}  // namespace pcg
