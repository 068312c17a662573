#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pcg/signal.hpp"

namespace pcg {

/// E[x^4] / E[x^2]^2 without mean removal. Throws "zero second moment" for
/// an all-zero input.
double kurtosis(std::span<const double> x);
double kurtosis(const Signal& sig);

/// Population standard deviation.
double envelope_std(const Signal& env);

struct AutocorrPeak {
    double value = 0.0;
    double lag_s = 0.0;
};

/// Maximum of R(l) = sum H(n)H(n-l) / sum H(n)^2 over lags in [min_s, max_s].
AutocorrPeak autocorr_max(const Signal& env, double min_lag_s = 0.27, double max_lag_s = 1.5);

/// SampEn with Chebyshev distance; a pair matches when its distance is <= r.
/// Both counts use the N - m templates that have an (m+1)-th sample. The
/// default r is 0.2 times the population standard deviation.
double sample_entropy(std::span<const double> x, int m = 2, std::optional<double> r = std::nullopt);
double sample_entropy(const Signal& sig, int m = 2, std::optional<double> r = std::nullopt);

struct CyclicSpectrumParams {
    std::vector<double> alpha_grid = default_alpha_grid();
    double frame_length_s = 1.0;  // short frames buy averages; shortened to the signal length if needed
    double overlap = 0.5;

    /// 64 cycle frequencies evenly spaced over 0.5..3.5 Hz.
    static std::vector<double> default_alpha_grid();
};

/// gamma(alpha): integral over f of |S_x(alpha, f)|, estimated with the
/// time-averaged cyclic periodogram (Hann frames, absolute-time demodulation).
std::vector<double> cyclic_spectral_profile(const Signal& sig, const CyclicSpectrumParams& params = {});

/// max(gamma) / median(gamma) over the alpha grid.
double degree_of_periodicity(const Signal& sig, const CyclicSpectrumParams& params = {});

struct SqiConfig {
    double lpf_cutoff_hz = 8.0;
    int lpf_order = 1;
    double min_lag_s = 0.27;
    double max_lag_s = 1.5;
    int sampen_m = 2;
    double sampen_r_factor = 0.2;
    double sampen_rate_hz = 50.0;  // envelope is resampled to this rate first
    CyclicSpectrumParams cyclic;
};

struct SqiReport {
    double kurtosis = 0.0;
    double env_std = 0.0;
    double autocorr_max = 0.0;
    double autocorr_lag_s = 0.0;
    double samp_en = 0.0;
    double degree_of_periodicity = 0.0;
};

/// Kurtosis and periodicity on the raw samples; the rest on the homomorphic
/// envelope.
SqiReport compute_sqi(const Signal& sig, const SqiConfig& config = {});

}  // namespace pcg
