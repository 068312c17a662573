#include "pcg/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "pcg/error.hpp"

namespace pcg {
namespace {

void add_burst(std::vector<double>& x, double fs, double centre, double amp, double sigma, double freq) {
    const double reach = 5.0 * sigma;
    const auto lo = static_cast<std::ptrdiff_t>(std::max(0.0, std::ceil((centre - reach) * fs)));
    const auto hi = std::min(static_cast<std::ptrdiff_t>(x.size()) - 1,
                             static_cast<std::ptrdiff_t>(std::floor((centre + reach) * fs)));
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
        const double t = static_cast<double>(i) / fs - centre;
        x[static_cast<std::size_t>(i)] +=
            amp * std::exp(-0.5 * t * t / (sigma * sigma)) * std::cos(2.0 * std::numbers::pi * freq * t);
    }
}

void validate(const SynthConfig& c) {
    if (!(c.fs > 0.0) || !(c.duration_s > 0.0)) throw Error("synth: fs and duration must be positive");
    if (!(c.heart_rate_bpm.mean > 0.0) || c.heart_rate_bpm.std < 0.0) throw Error("synth: invalid heart rate");
    if (!(c.s1_s2_ms.mean > 0.0) || c.s1_s2_ms.std < 0.0 || !(c.s2_s1_ms.mean > 0.0) || c.s2_s1_ms.std < 0.0) {
        throw Error("synth: invalid S1-S2 / S2-S1 gaps");
    }
    if (!(c.s1_sigma_ms > 0.0) || !(c.s2_sigma_ms > 0.0)) throw Error("synth: burst widths must be positive");
    const double nyquist = c.fs / 2.0;
    if (!(c.s1_freq_hz < nyquist) || !(c.s2_freq_hz < nyquist)) throw Error("synth: burst frequency above Nyquist");
    const double beat_ms = 60000.0 / c.heart_rate_bpm.mean;
    const double beat_jitter_ms = beat_ms * c.heart_rate_bpm.std / c.heart_rate_bpm.mean;
    const double slack = 3.0 * std::sqrt(beat_jitter_ms * beat_jitter_ms + c.s1_s2_ms.std * c.s1_s2_ms.std +
                                         c.s2_s1_ms.std * c.s2_s1_ms.std);
    const double sum = c.s1_s2_ms.mean + c.s2_s1_ms.mean;
    if (std::abs(sum - beat_ms) > std::max(slack, 1.0)) {
        throw Error("synth: inconsistent durations: S1-S2 + S2-S1 = " + format_number(sum) +
                    " ms but the heart rate implies " + format_number(beat_ms) + " ms per beat");
    }
    const double width = 2.5 * (c.s1_sigma_ms + c.s2_sigma_ms);
    if (c.s1_s2_ms.mean <= width || c.s2_s1_ms.mean <= width) {
        throw Error("synth: inconsistent durations: gaps shorter than the bursts");
    }
}

}  // namespace

SynthOutput generate(const SynthConfig& cfg) {
    validate(cfg);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    const auto n = static_cast<std::size_t>(std::llround(cfg.duration_s * cfg.fs));
    if (n < 2) throw Error("synth: recording shorter than two samples");
    const double last_t = static_cast<double>(n - 1) / cfg.fs;
    std::vector<double> clean(n, 0.0);
    LabelSet labels;
    SegmentSet segments;

    const double sigma1 = cfg.s1_sigma_ms / 1000.0;
    const double sigma2 = cfg.s2_sigma_ms / 1000.0;
    const double beat_mean = 60.0 / cfg.heart_rate_bpm.mean;
    double s1 = 2.5 * sigma1 + uniform(rng) * beat_mean;
    const double width = 2.5 * (sigma1 + sigma2);
    while (true) {
        const double hr = std::max(1.0, cfg.heart_rate_bpm.mean + cfg.heart_rate_bpm.std * unit(rng));
        const double beat = 60.0 / hr;
        double gap = (cfg.s1_s2_ms.mean + cfg.s1_s2_ms.std * unit(rng)) / 1000.0;
        gap = std::clamp(gap, width, beat - width);
        const double s2 = s1 + gap;
        if (s1 + 2.5 * sigma1 > last_t) break;
        add_burst(clean, cfg.fs, s1, cfg.s1_amplitude, sigma1, cfg.s1_freq_hz);
        labels.entries.push_back({s1, LabelKind::S1});
        segments.events.push_back({s1 - 2.5 * sigma1, s1, s1 + 2.5 * sigma1, EventKind::S1});
        if (s2 + 2.5 * sigma2 > last_t) break;
        add_burst(clean, cfg.fs, s2, cfg.s2_amplitude, sigma2, cfg.s2_freq_hz);
        labels.entries.push_back({s2, LabelKind::S2});
        segments.events.push_back({s2 - 2.5 * sigma2, s2, s2 + 2.5 * sigma2, EventKind::S2});
        s1 += beat;
    }

    std::vector<double> noisy = clean;
    if (std::isfinite(cfg.snr_db)) {
        double power = 0.0;
        for (double v : clean) power += v * v;
        power /= static_cast<double>(n);
        const double sd = std::sqrt(power / std::pow(10.0, cfg.snr_db / 10.0));
        for (auto& v : noisy) v += sd * unit(rng);
    }
    const std::string entry = format_step("synth", {{"fs", format_number(cfg.fs)},
                                                    {"duration_s", format_number(cfg.duration_s)},
                                                    {"snr_db", format_number(cfg.snr_db)},
                                                    {"seed", std::to_string(cfg.seed)}});
    return {Signal(std::move(noisy), cfg.fs, {entry}), Signal(std::move(clean), cfg.fs, {entry}),
            std::move(labels), std::move(segments)};
}

void write_synth(const SynthOutput& out, const std::filesystem::path& stem) {
    auto wav = stem;
    wav += ".wav";
    auto csv = stem;
    csv += ".csv";
    write_wav(wav, out.signal, WavEncoding::float32);
    write_annotations(csv, out.labels);
}

}  // namespace pcg
