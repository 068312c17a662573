#include "pcg/features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "fft.hpp"
#include "pcg/curve.hpp"
#include "pcg/error.hpp"
#include "pcg/wavelet.hpp"

namespace pcg {

EventWindow make_window(std::span<const double> signal, std::span<const double> envelope, double fs,
                        const SegmentEvent& event) {
    if (!(fs > 0.0)) throw Error("sampling rate must be positive");
    if (envelope.size() != signal.size()) throw Error("envelope and signal lengths differ");
    if (!(event.end_s > event.start_s)) throw Error("event has zero or negative length");
    if (signal.empty()) throw Error("empty signal");
    const double first = std::ceil(event.start_s * fs - 1e-9);
    const double last = std::min(std::floor(event.end_s * fs + 1e-9), static_cast<double>(signal.size() - 1));
    if (event.start_s < 0.0 || first > last) throw Error("event lies outside the signal or holds no samples");
    EventWindow w;
    w.signal = signal;
    w.envelope = envelope;
    w.fs = fs;
    w.first = static_cast<std::size_t>(first);
    w.last = static_cast<std::size_t>(last);
    w.start_s = event.start_s;
    w.peak_s = event.peak_s;
    w.end_s = event.end_s;
    return w;
}

double time_delta(const EventWindow& w) {
    const double d = (w.end_s - w.start_s) * 1000.0;
    if (!(d > 0.0)) throw Error("zero-length window");
    return d;
}

RampTime ramp_time(const EventWindow& w) {
    const double total = time_delta(w);
    const auto k = argmax(w.env());
    const double peak_s = static_cast<double>(w.first + k) / w.fs;
    RampTime r;
    r.onset_ms = (peak_s - w.start_s) * 1000.0;
    r.exit_ms = total - r.onset_ms;
    return r;
}

double peak_spread(const EventWindow& w, double area_fraction) {
    const auto y = w.env();
    const auto [lo, hi] = spread_interval(y, argmax(y), area_fraction);
    return static_cast<double>(hi - lo) / w.fs * 1000.0;
}

double peak_width(const EventWindow& w, double level_fraction) {
    const auto y = w.env();
    const auto k = argmax(y);
    const double level = level_fraction * y[k];
    return (crossing_after(y, k, level) - crossing_before(y, k, level)) / w.fs * 1000.0;
}

double peak_centroid(const EventWindow& w) {
    const auto idx = half_area_index(w.env());
    return (static_cast<double>(w.first + idx) / w.fs - w.start_s) * 1000.0;
}

double zero_crossing_rate(const EventWindow& w) {
    const auto x = w.samples();
    if (x.size() < 2) throw Error("zero crossing rate needs at least 2 samples");
    int sign = 0;
    std::size_t changes = 0;
    for (double v : x) {
        const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (sign != 0 && s != sign) ++changes;
        sign = s;
    }
    return static_cast<double>(changes) / (static_cast<double>(x.size()) / w.fs * 1000.0);
}

Spectrum magnitude_spectrum(std::span<const double> x, double fs, std::size_t pad_factor) {
    const std::size_t n = x.size();
    if (n < 4) throw Error("spectral features need at least 4 samples");
    if (pad_factor < 1) throw Error("pad factor must be at least 1");
    std::vector<double> windowed(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double h = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1));
        windowed[k] = h * x[k];
    }
    const std::size_t nfft = n * pad_factor;
    const auto bins = detail::rfft(windowed, nfft);
    Spectrum s;
    s.bin_hz = fs / static_cast<double>(nfft);
    s.magnitude.reserve(bins.size());
    for (const auto& b : bins) s.magnitude.push_back(std::abs(b));
    return s;
}

namespace {

void check_spectrum(const Spectrum& s) {
    const bool any = std::any_of(s.magnitude.begin(), s.magnitude.end(), [](double v) { return v > 0.0; });
    if (!any) throw Error("zero spectrum");
}

}  // namespace

double max_frequency(const Spectrum& s) {
    check_spectrum(s);
    return static_cast<double>(argmax(s.magnitude)) * s.bin_hz;
}

double spectral_spread(const Spectrum& s, double area_fraction) {
    check_spectrum(s);
    const auto [lo, hi] = spread_interval(s.magnitude, argmax(s.magnitude), area_fraction);
    return static_cast<double>(hi - lo) * s.bin_hz;
}

double spectral_width(const Spectrum& s, double level_fraction) {
    check_spectrum(s);
    const auto k = argmax(s.magnitude);
    const double level = level_fraction * s.magnitude[k];
    return (crossing_after(s.magnitude, k, level) - crossing_before(s.magnitude, k, level)) * s.bin_hz;
}

double spectral_centroid(const Spectrum& s) {
    check_spectrum(s);
    return static_cast<double>(half_area_index(s.magnitude)) * s.bin_hz;
}

double max_frequency(const EventWindow& w) { return max_frequency(magnitude_spectrum(w.samples(), w.fs)); }
double spectral_spread(const EventWindow& w, double area_fraction) {
    return spectral_spread(magnitude_spectrum(w.samples(), w.fs), area_fraction);
}
double spectral_width(const EventWindow& w, double level_fraction) {
    return spectral_width(magnitude_spectrum(w.samples(), w.fs), level_fraction);
}
double spectral_centroid(const EventWindow& w) { return spectral_centroid(magnitude_spectrum(w.samples(), w.fs)); }

std::vector<double> CwtFeatureConfig::scales(double fs) const {
    return scales_for_band(f_low_hz, f_high_hz, scale_count, fs, wavelet);
}

namespace {

std::vector<std::vector<double>> cwt_magnitude(const EventWindow& w, const CwtFeatureConfig& cfg,
                                               std::vector<double>& scales) {
    scales = cfg.scales(w.fs);
    const double largest = *std::max_element(scales.begin(), scales.end());
    if (static_cast<double>(w.size()) < largest) {
        throw Error("window of " + std::to_string(w.size()) + " samples is shorter than the largest scale (" +
                    format_number(largest) + ")");
    }
    const auto res = cwt(w.samples(), w.fs, scales, cfg.wavelet);
    std::vector<std::vector<double>> grid(res.coefficients.size());
    for (std::size_t s = 0; s < grid.size(); ++s) {
        grid[s].reserve(res.coefficients[s].size());
        for (const auto& c : res.coefficients[s]) grid[s].push_back(std::abs(c));
    }
    return grid;
}

}  // namespace

CwtMax cwt_max(const EventWindow& w, const CwtFeatureConfig& cfg) {
    std::vector<double> scales;
    const auto grid = cwt_magnitude(w, cfg, scales);
    std::size_t best_s = 0, best_t = 0;
    for (std::size_t s = 0; s < grid.size(); ++s) {
        for (std::size_t t = 0; t < grid[s].size(); ++t) {
            if (grid[s][t] > grid[best_s][best_t]) {
                best_s = s;
                best_t = t;
            }
        }
    }
    CwtMax r;
    r.scale = scales[best_s];
    r.pseudofrequency_hz = scale_to_frequency(r.scale, w.fs, cfg.wavelet);
    r.time_ms = (static_cast<double>(w.first + best_t) / w.fs - w.start_s) * 1000.0;
    return r;
}

std::vector<std::pair<std::size_t, std::size_t>> grid_maxima(const std::vector<std::vector<double>>& grid) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t rows = grid.size();
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t cols = grid[r].size();
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = grid[r][c];
            bool geq_all = true, gt_any = false, has_neighbour = false;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const auto rr = static_cast<std::ptrdiff_t>(r) + dr;
                    const auto cc = static_cast<std::ptrdiff_t>(c) + dc;
                    if (rr < 0 || cc < 0 || rr >= static_cast<std::ptrdiff_t>(rows) ||
                        cc >= static_cast<std::ptrdiff_t>(grid[static_cast<std::size_t>(rr)].size())) {
                        continue;
                    }
                    has_neighbour = true;
                    const double u = grid[static_cast<std::size_t>(rr)][static_cast<std::size_t>(cc)];
                    if (u > v) geq_all = false;
                    if (v > u) gt_any = true;
                }
            }
            if (geq_all && (gt_any || !has_neighbour)) out.emplace_back(r, c);
        }
    }
    std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        return grid[a.first][a.second] > grid[b.first][b.second];
    });
    return out;
}

double cwt_peak_distance(const EventWindow& w, const CwtFeatureConfig& cfg) {
    std::vector<double> scales;
    const auto grid = cwt_magnitude(w, cfg, scales);
    const auto maxima = grid_maxima(grid);
    if (maxima.size() < 2) return 0.0;
    const double top = grid[maxima[0].first][maxima[0].second];
    if (grid[maxima[1].first][maxima[1].second] < cfg.maxima_floor * top) return 0.0;
    const double ds = static_cast<double>(maxima[0].first) - static_cast<double>(maxima[1].first);
    const double dt = static_cast<double>(maxima[0].second) - static_cast<double>(maxima[1].second);
    return std::hypot(ds, dt);
}

namespace {

void check_dwt_config(const DwtFeatureConfig& cfg) {
    if (cfg.depth < 1) throw Error("decomposition depth must be at least 1");
    if (cfg.level < 1 || cfg.level > cfg.depth) {
        throw Error("detail level " + std::to_string(cfg.level) + " out of range 1.." + std::to_string(cfg.depth));
    }
}

}  // namespace

std::vector<double> dwt_window_coefficients(const EventWindow& w, const DwtFeatureConfig& cfg) {
    check_dwt_config(cfg);
    const auto full = upsample_level_to_signal(dwt(w.signal, w.fs, cfg.wavelet, cfg.depth), cfg.level);
    return {full.begin() + static_cast<std::ptrdiff_t>(w.first), full.begin() + static_cast<std::ptrdiff_t>(w.last + 1)};
}

double dwt_intensity(std::span<const double> c) {
    if (c.empty()) throw Error("no coefficients in window");
    double sum = 0.0;
    for (double v : c) sum += v * v;
    return std::sqrt(sum / static_cast<double>(c.size()));
}

double dwt_entropy(std::span<const double> c) {
    if (c.empty()) throw Error("no coefficients in window");
    double s = 0.0;
    for (double v : c) {
        const double p = v * v;
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s >= 0.0 ? std::sqrt(s) : -std::sqrt(-s);
}

double dwt_intensity(const EventWindow& w, const DwtFeatureConfig& cfg) {
    return dwt_intensity(dwt_window_coefficients(w, cfg));
}

double dwt_entropy(const EventWindow& w, const DwtFeatureConfig& cfg) {
    return dwt_entropy(dwt_window_coefficients(w, cfg));
}

double katz_fd(std::span<const double> x) {
    if (x.size() < 3) throw Error("Katz dimension needs at least 3 samples");
    double length = 0.0, diameter = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        length += std::hypot(1.0, x[i] - x[i - 1]);
        diameter = std::max(diameter, std::hypot(static_cast<double>(i), x[i] - x[0]));
    }
    const double steps = std::log10(static_cast<double>(x.size() - 1));
    return steps / (steps + std::log10(diameter / length));
}

double katz_fd(const EventWindow& w) { return katz_fd(w.samples()); }

namespace {

int first_zero_crossing_lag(std::span<const double> x) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    for (std::size_t lag = 1; lag < n; ++lag) {
        double r = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) r += (x[i] - mean) * (x[i + lag] - mean);
        if (r <= 0.0) return static_cast<int>(lag);
    }
    return 1;
}

// Period in samples of the power-weighted mean frequency.
int mean_period(std::span<const double> x) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> centred(n);
    for (std::size_t i = 0; i < n; ++i) centred[i] = x[i] - mean;
    const auto bins = detail::rfft(centred, n);
    double power = 0.0, moment = 0.0;
    for (std::size_t k = 1; k < bins.size(); ++k) {
        const double p = std::norm(bins[k]);
        power += p;
        moment += p * static_cast<double>(k) / static_cast<double>(n);
    }
    if (!(power > 0.0)) throw Error("constant window");
    return std::max(1, static_cast<int>(std::lround(power / moment)));
}

}  // namespace

double lyapunov_max(std::span<const double> x, const LyapunovConfig& cfg) {
    if (cfg.embedding_dim < 1 || cfg.steps < 2 || cfg.delay < 0 || cfg.min_separation < 0) {
        throw Error("invalid Lyapunov parameters");
    }
    const std::size_t n = x.size();
    if (n < 12) throw Error("window too short for the Lyapunov estimate");
    const int tau = cfg.delay > 0 ? cfg.delay : first_zero_crossing_lag(x);
    const std::size_t span = static_cast<std::size_t>(cfg.embedding_dim - 1) * static_cast<std::size_t>(tau);
    if (n <= span + 10) throw Error("window too short for embedding dimension and delay");
    const int separation = cfg.min_separation > 0 ? cfg.min_separation : mean_period(x);

    const std::size_t vectors = n - span;
    const auto steps = static_cast<std::size_t>(cfg.steps);
    if (vectors <= steps) throw Error("window too short for the divergence horizon");
    const std::size_t usable = vectors - steps + 1;
    auto dist = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (int d = 0; d < cfg.embedding_dim; ++d) {
            const double diff = x[a + static_cast<std::size_t>(d * tau)] - x[b + static_cast<std::size_t>(d * tau)];
            s += diff * diff;
        }
        return std::sqrt(s);
    };

    std::vector<double> log_sum(steps, 0.0);
    std::vector<std::size_t> counts(steps, 0);
    for (std::size_t j = 0; j < usable; ++j) {
        std::size_t best = usable;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < usable; ++k) {
            const auto gap = j > k ? j - k : k - j;
            if (gap <= static_cast<std::size_t>(separation)) continue;
            const double d = dist(j, k);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        if (best == usable) continue;
        for (std::size_t i = 0; i < steps; ++i) {
            const double d = dist(j + i, best + i);
            if (d > 0.0) {
                log_sum[i] += std::log(d);
                ++counts[i];
            }
        }
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, m = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        if (counts[i] == 0) continue;
        const double xi = static_cast<double>(i);
        const double yi = log_sum[i] / static_cast<double>(counts[i]);
        sx += xi;
        sy += yi;
        sxx += xi * xi;
        sxy += xi * yi;
        m += 1.0;
    }
    if (m < 2.0) throw Error("no neighbour pairs outside the temporal exclusion window");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double lyapunov_max(const EventWindow& w, const LyapunovConfig& cfg) { return lyapunov_max(w.samples(), cfg); }

SegmentSet derive_regions(const SegmentSet& segs, EventKind kind) {
    if (kind == EventKind::S1 || kind == EventKind::S2) return segs.of_kind(kind);
    if (kind == EventKind::unknown) throw Error("cannot derive regions of unknown kind");
    std::vector<SegmentEvent> sounds;
    for (const auto& e : segs.events) {
        if (e.kind == EventKind::S1 || e.kind == EventKind::S2) sounds.push_back(e);
    }
    std::stable_sort(sounds.begin(), sounds.end(),
                     [](const SegmentEvent& a, const SegmentEvent& b) { return a.peak_s < b.peak_s; });

    SegmentSet out;
    auto emit = [&](double start, double end) {
        if (end > start) out.events.push_back({start, 0.5 * (start + end), end, kind});
    };
    for (std::size_t i = 0; i < sounds.size(); ++i) {
        const auto& cur = sounds[i];
        if (kind == EventKind::cycle) {
            if (cur.kind != EventKind::S1) continue;
            for (std::size_t j = i + 1; j < sounds.size(); ++j) {
                if (sounds[j].kind == EventKind::S1) {
                    emit(cur.start_s, sounds[j].start_s);
                    break;
                }
            }
            continue;
        }
        if (i + 1 >= sounds.size()) break;
        const auto& next = sounds[i + 1];
        if (kind == EventKind::systole && cur.kind == EventKind::S1 && next.kind == EventKind::S2) {
            emit(cur.end_s, next.start_s);
        } else if (kind == EventKind::diastole && cur.kind == EventKind::S2 && next.kind == EventKind::S1) {
            emit(cur.end_s, next.start_s);
        }
    }
    return out;
}

}  // namespace pcg
