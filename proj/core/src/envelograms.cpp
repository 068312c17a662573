#include <algorithm>
#include <array>
#include <cmath>

#include "fft.hpp"
#include "hsmm_internal.hpp"
#include "pcg/error.hpp"
#include "pcg/preprocess.hpp"
#include "pcg/wavelet.hpp"

namespace pcg {
namespace detail {
namespace {

std::vector<double> block_means(const std::vector<double>& x, double fs, double rate, std::size_t frames) {
    std::vector<double> out(frames);
    for (std::size_t k = 0; k < frames; ++k) {
        const auto lo = std::min(x.size(), static_cast<std::size_t>(std::llround(static_cast<double>(k) * fs / rate)));
        auto hi = std::min(x.size(), static_cast<std::size_t>(std::llround(static_cast<double>(k + 1) * fs / rate)));
        if (hi <= lo) {
            if (lo >= x.size()) throw Error("envelogram frame " + std::to_string(k) + " lies past the signal");
            hi = lo + 1;
        }
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i];
        out[k] = s / static_cast<double>(hi - lo);
    }
    return out;
}

std::vector<double> moving_rms(const std::vector<double>& x, std::size_t window) {
    const std::size_t n = x.size();
    window = std::clamp<std::size_t>(window, 1, n);
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i] * x[i];
    std::vector<double> out(n);
    const std::size_t before = window / 2;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= before ? i - before : 0;
        const std::size_t hi = std::min(n, lo + window);
        out[i] = std::sqrt(std::max(0.0, (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo)));
    }
    return out;
}

void zscore(std::vector<double>& x, const std::string& name) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(x.size()));
    if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) throw Error("degenerate channel '" + name + "'");
    for (auto& v : x) v = (v - mean) / sd;
}

}  // namespace

PreparedRecording prepare_recording(const Signal& sig, const EnvelogramConfig& config) {
    if (!(config.feature_rate > 0.0) || !(config.processing_fs > 0.0)) {
        throw Error("envelogram rates must be positive");
    }
    if (sig.duration_s() * config.feature_rate < 1.0) throw Error("signal shorter than one frame");
    Signal work = sig.fs() == config.processing_fs ? sig : resample(sig, config.processing_fs);
    const double limit = 0.45 * std::min(sig.fs(), config.processing_fs);
    const double high = std::min(config.prefilter_high_hz, limit);
    if (!(config.band_high_hz < 0.5 * std::min(sig.fs(), config.processing_fs))) {
        throw Error("band power edge " + format_number(config.band_high_hz) +
                    " Hz needs a sampling rate of at least twice that");
    }
    work = butterworth(work, {config.prefilter_order, FilterKind::bandpass, {config.prefilter_low_hz, high}, true});
    auto hom = homomorphic_envelope(work, config.homomorphic_cutoff_hz, 1);
    return {work, hom.data(), sig.duration_s()};
}

Envelograms envelograms_from(const PreparedRecording& rec, const EnvelogramConfig& config, bool normalize) {
    const double fs = rec.filtered.fs();
    const auto frames = static_cast<std::size_t>(std::floor(rec.source_duration_s * config.feature_rate + 1e-9));
    if (frames == 0) throw Error("signal shorter than one frame");

    const auto& x = rec.filtered.data();
    const auto hilbert = hilbert_magnitude(x);
    const SosFilter band =
        design_butterworth({2, FilterKind::bandpass, {config.band_low_hz, config.band_high_hz}, true}, fs);
    const auto band_rms =
        moving_rms(sosfiltfilt(band, x), static_cast<std::size_t>(std::llround(config.band_window_s * fs)));
    const int level = std::min(config.dwt_level, max_dwt_level(x.size()));
    const auto decomposition = dwt(x, fs, config.dwt_wavelet, level);
    auto detail = upsample_level_to_signal(decomposition, level);
    for (auto& v : detail) v = std::abs(v);

    Envelograms out;
    out.feature_rate = config.feature_rate;
    out.names = {"homomorphic", "hilbert", "band_power", "dwt"};
    const std::array<const std::vector<double>*, 4> sources{&rec.homomorphic, &hilbert, &band_rms, &detail};
    for (const auto* channel : sources) {
        out.channels.push_back(block_means(*channel, fs, config.feature_rate, frames));
    }
    if (normalize) {
        for (std::size_t c = 0; c < out.channels.size(); ++c) zscore(out.channels[c], out.names[c]);
    }
    return out;
}

RatesEstimate rates_from(const std::vector<double>& envelope, double fs, RateBand band, double significance) {
    if (!(band.min_bpm > 0.0 && band.min_bpm < band.max_bpm)) throw Error("heart rate band needs 0 < min < max");
    const double duration = static_cast<double>(envelope.size()) / fs;
    if (duration < 4.0 * 60.0 / band.min_bpm) {
        throw Error("rate estimation failed: " + format_number(duration) + " s covers fewer than 4 cycles at " +
                    format_number(band.min_bpm) + " BPM");
    }
    const std::size_t n = envelope.size();
    double mean = 0.0;
    for (double v : envelope) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> centred(n);
    for (std::size_t i = 0; i < n; ++i) centred[i] = envelope[i] - mean;

    std::size_t nfft = 1;
    while (nfft < 2 * n) nfft *= 2;
    const auto spec = rfft(centred, nfft);
    std::vector<cplx> power(nfft);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        power[k] = std::norm(spec[k]);
        if (k > 0 && k < nfft - k) power[nfft - k] = power[k];
    }
    const auto raw = ifft(power);
    const double r0 = raw[0].real();
    if (!(r0 > 0.0)) throw Error("rate estimation failed: flat envelope");
    auto r = [&](std::size_t l) { return raw[l].real() / r0; };

    auto best_peak = [&](std::size_t lo, std::size_t hi) {
        std::size_t best = 0;
        double value = -2.0;
        for (std::size_t l = std::max<std::size_t>(lo, 1); l <= hi && l + 1 < n; ++l) {
            if (r(l) > r(l - 1) && r(l) >= r(l + 1) && r(l) > value) {
                best = l;
                value = r(l);
            }
        }
        return std::pair{best, value};
    };

    const auto lo = static_cast<std::size_t>(std::ceil(60.0 / band.max_bpm * fs));
    const auto hi = static_cast<std::size_t>(std::floor(60.0 / band.min_bpm * fs));
    const auto [beat_lag, beat_value] = best_peak(lo, hi);
    if (beat_lag == 0 || beat_value < significance) {
        throw Error("rate estimation failed: no autocorrelation peak between " + format_number(band.min_bpm) +
                    " and " + format_number(band.max_bpm) + " BPM");
    }
    const auto sys_lo = static_cast<std::size_t>(std::ceil(0.1 * fs));
    const auto sys_hi = beat_lag / 2;
    const auto [sys_lag, sys_value] = best_peak(sys_lo, sys_hi);
    if (sys_lag == 0 || !(sys_value > 0.0)) {
        throw Error("rate estimation failed: no systolic autocorrelation peak");
    }
    return {60.0 * fs / static_cast<double>(beat_lag), static_cast<double>(sys_lag) / static_cast<double>(beat_lag)};
}

}  // namespace detail

std::vector<double> Envelograms::frame(std::size_t t) const {
    std::vector<double> row(channels.size());
    for (std::size_t c = 0; c < channels.size(); ++c) row[c] = channels[c].at(t);
    return row;
}

Envelograms extract_envelograms(const Signal& sig, const EnvelogramConfig& config, bool normalize) {
    return detail::envelograms_from(detail::prepare_recording(sig, config), config, normalize);
}

RatesEstimate estimate_rates(const Signal& sig, RateBand band, const EnvelogramConfig& config, double significance) {
    const auto rec = detail::prepare_recording(sig, config);
    return detail::rates_from(rec.homomorphic, rec.filtered.fs(), band, significance);
}

}  // namespace pcg
