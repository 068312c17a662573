#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace oracle {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double chebyshev(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

std::size_t count_pairs(std::span<const double> x, int len, std::size_t templates, double r) {
    std::vector<std::vector<double>> t;
    for (std::size_t i = 0; i < templates; ++i) t.emplace_back(x.begin() + static_cast<long>(i), x.begin() + static_cast<long>(i) + len);
    std::size_t c = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            if (chebyshev(t[i], t[j]) <= r) ++c;
        }
    }
    return c;
}

double sum_of(std::span<const double> y, std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) s += y[i];
    return s;
}

std::size_t first_max(std::span<const double> y) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (y[i] > y[k]) k = i;
    }
    return k;
}

// Greedy growth toward the larger neighbour; returns hi - lo.
double spread_len(std::span<const double> y, double fraction) {
    const std::size_t p = first_max(y);
    const double target = fraction * sum_of(y, 0, y.size() - 1) * (1.0 - 1e-12);
    std::size_t lo = p, hi = p;
    const double none = -std::numeric_limits<double>::infinity();
    while (sum_of(y, lo, hi) < target) {
        const double left = lo > 0 ? y[lo - 1] : none;
        const double right = hi + 1 < y.size() ? y[hi + 1] : none;
        if (left == none && right == none) break;
        if (left >= right) {
            --lo;
        } else {
            ++hi;
        }
    }
    return static_cast<double>(hi - lo);
}

// Width in samples at level_fraction of the maximum, linear interpolation.
double level_width(std::span<const double> y, double fraction) {
    const std::size_t p = first_max(y);
    const double level = fraction * y[p];
    double left = 0.0;
    for (std::size_t i = p; i > 0; --i) {
        if (y[i - 1] < level) {
            const double a = y[i - 1], b = y[i];
            left = static_cast<double>(i - 1) + (b > a ? (level - a) / (b - a) : 1.0);
            break;
        }
    }
    double right = static_cast<double>(y.size() - 1);
    for (std::size_t i = p + 1; i < y.size(); ++i) {
        if (y[i] < level) {
            const double a = y[i - 1], b = y[i];
            right = static_cast<double>(i - 1) + (a > b ? (a - level) / (a - b) : 0.0);
            break;
        }
    }
    return right - left;
}

double half_area(std::span<const double> y) {
    const double total = sum_of(y, 0, y.size() - 1);
    if (!(total > 0.0)) return kNaN;
    double run = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        run += y[i];
        if (run >= total / 2.0) return static_cast<double>(i);
    }
    return static_cast<double>(y.size() - 1);
}

double mirrored(std::span<const double> x, long k) {
    const long n = static_cast<long>(x.size());
    // Half-sample symmetric: ... x1 x0 | x0 x1 ... x(n-1) | x(n-1) x(n-2) ...
    while (k < 0 || k >= n) {
        if (k < 0) k = -k - 1;
        if (k >= n) k = 2 * n - 1 - k;
    }
    return x[static_cast<std::size_t>(k)];
}

}  // namespace

double sample_entropy(std::span<const double> x, int m, double r) {
    const std::size_t n = x.size();
    if (n <= static_cast<std::size_t>(m) + 1) return kNaN;
    const std::size_t templates = n - static_cast<std::size_t>(m);
    const auto b = count_pairs(x, m, templates, r);
    const auto a = count_pairs(x, m + 1, templates, r);
    if (a == 0 || b == 0) return kNaN;
    return -std::log(static_cast<double>(a) / static_cast<double>(b));
}

double katz(std::span<const double> x) {
    const std::size_t n = x.size();
    // DIM X(N), Y(N) with X(I) = I
    std::vector<double> px(n + 1), py(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        px[i] = static_cast<double>(i);
        py[i] = x[i - 1];
    }
    double l = 0.0;
    for (std::size_t i = 2; i <= n; ++i) l += std::hypot(px[i] - px[i - 1], py[i] - py[i - 1]);
    double d = 0.0;
    for (std::size_t i = 2; i <= n; ++i) d = std::max(d, std::hypot(px[i] - px[1], py[i] - py[1]));
    const double a = l / static_cast<double>(n - 1);
    const double steps = l / a;
    return std::log(steps) / (std::log(steps) + std::log(d / l));
}

std::vector<double> hann_spectrum(std::span<const double> x, std::size_t nfft) {
    const std::size_t n = x.size();
    std::vector<double> out(nfft / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double w = std::pow(std::sin(std::numbers::pi * static_cast<double>(t) / static_cast<double>(n - 1)), 2);
            const double ph = -2.0 * std::numbers::pi * static_cast<double>(k * t % nfft) / static_cast<double>(nfft);
            acc += w * x[t] * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        out[k] = std::abs(acc);
    }
    return out;
}

std::vector<std::vector<double>> morlet_magnitude(std::span<const double> x, std::span<const double> scales) {
    const long n = static_cast<long>(x.size());
    std::vector<std::vector<double>> out;
    for (double a : scales) {
        const long half = static_cast<long>(std::ceil(5.0 * a));
        std::vector<std::complex<double>> psi;  // psi((k - b) / a) for k - b = -half .. half
        for (long m = -half; m <= half; ++m) {
            const double t = static_cast<double>(m) / a;
            psi.push_back(std::pow(std::numbers::pi, -0.25) * std::exp(std::complex<double>(-0.5 * t * t, 6.0 * t)));
        }
        std::vector<double> row;
        for (long b = 0; b < n; ++b) {
            std::complex<double> acc = 0.0;
            for (long k = b - half; k <= b + half; ++k) {
                acc += mirrored(x, k) * std::conj(psi[static_cast<std::size_t>(k - b + half)]) / std::sqrt(a);
            }
            row.push_back(std::abs(acc));
        }
        out.push_back(std::move(row));
    }
    return out;
}

double lyapunov(std::span<const double> x, int m, int steps) {
    const std::size_t n = x.size();
    if (n < 12) return kNaN;
    double mean = 0.0;
    for (double v : x) mean += v / static_cast<double>(n);

    int tau = 1;
    for (std::size_t lag = 1; lag < n; ++lag) {
        double r = 0.0;
        for (std::size_t i = lag; i < n; ++i) r += (x[i] - mean) * (x[i - lag] - mean);
        if (r <= 0.0) {
            tau = static_cast<int>(lag);
            break;
        }
    }
    if (n <= static_cast<std::size_t>((m - 1) * tau) + 10) return kNaN;

    // Mean frequency of the one-sided power spectrum, DC excluded.
    double power = 0.0, moment = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double ph = -2.0 * std::numbers::pi * static_cast<double>(k * t % n) / static_cast<double>(n);
            acc += (x[t] - mean) * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        power += std::norm(acc);
        moment += std::norm(acc) * static_cast<double>(k) / static_cast<double>(n);
    }
    if (!(power > 0.0)) return kNaN;
    const long theiler = std::max(1L, std::lround(power / moment));

    std::vector<std::vector<double>> y;
    for (std::size_t i = 0; i + static_cast<std::size_t>((m - 1) * tau) < n; ++i) {
        std::vector<double> v;
        for (int d = 0; d < m; ++d) v.push_back(x[i + static_cast<std::size_t>(d * tau)]);
        y.push_back(v);
    }
    if (y.size() <= static_cast<std::size_t>(steps)) return kNaN;
    const long usable = static_cast<long>(y.size()) - steps + 1;
    auto euclid = [&](long a, long b) {
        double s = 0.0;
        for (int d = 0; d < m; ++d) s += std::pow(y[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)] -
                                                      y[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)], 2);
        return std::sqrt(s);
    };
    std::vector<std::vector<double>> logs(static_cast<std::size_t>(steps));
    for (long j = 0; j < usable; ++j) {
        long nn = -1;
        double best = 0.0;
        for (long k = 0; k < usable; ++k) {
            if (std::labs(j - k) <= theiler) continue;
            const double d = euclid(j, k);
            if (nn < 0 || d < best) {
                nn = k;
                best = d;
            }
        }
        if (nn < 0) continue;
        for (int i = 0; i < steps; ++i) {
            const double d = euclid(j + i, nn + i);
            if (d > 0.0) logs[static_cast<std::size_t>(i)].push_back(std::log(d));
        }
    }
    std::vector<double> xs, ys;
    for (int i = 0; i < steps; ++i) {
        const auto& l = logs[static_cast<std::size_t>(i)];
        if (l.empty()) continue;
        double s = 0.0;
        for (double v : l) s += v;
        xs.push_back(i);
        ys.push_back(s / static_cast<double>(l.size()));
    }
    if (xs.size() < 2) return kNaN;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / static_cast<double>(xs.size());
        my += ys[i] / static_cast<double>(xs.size());
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

namespace {

std::size_t best_from(const std::vector<double>& det, const std::vector<double>& lab, double tol_s, std::size_t i,
                      std::vector<bool>& used) {
    if (i == det.size()) return 0;
    std::size_t best = best_from(det, lab, tol_s, i + 1, used);
    for (std::size_t j = 0; j < lab.size(); ++j) {
        if (used[j] || std::fabs(det[i] - lab[j]) > tol_s) continue;
        used[j] = true;
        best = std::max(best, 1 + best_from(det, lab, tol_s, i + 1, used));
        used[j] = false;
    }
    return best;
}

}  // namespace

std::size_t max_matching(const std::vector<double>& det, const std::vector<double>& lab, double tol_ms) {
    std::vector<bool> used(lab.size(), false);
    return best_from(det, lab, tol_ms / 1000.0 + 1e-9, 0, used);
}

std::map<std::string, double> features(std::span<const double> signal, std::span<const double> envelope,
                                       double fs, const pcg::SegmentEvent& e, std::span<const double> level_coeffs) {
    std::map<std::string, double> f;
    const char* names[] = {"time_delta",      "onset_time",     "exit_time",        "peak_spread",
                           "peak_width",      "peak_centroid",  "zero_cross_rate",  "max_freq",
                           "spectral_spread", "spectral_width", "spectral_centroid", "cwt_max_freq",
                           "cwt_max_time",    "cwt_peak_distance", "dwt_intensity", "dwt_entropy",
                           "katz_fd",         "lyapunov_max"};
    for (const char* n : names) f[n] = kNaN;

    const long first = static_cast<long>(std::ceil(e.start_s * fs - 1e-9));
    const long last = std::min(static_cast<long>(std::floor(e.end_s * fs + 1e-9)), static_cast<long>(signal.size()) - 1);
    if (e.start_s < 0.0 || !(e.end_s > e.start_s) || first > last) return f;
    const auto n = static_cast<std::size_t>(last - first + 1);
    const auto x = signal.subspan(static_cast<std::size_t>(first), n);
    const auto env = envelope.subspan(static_cast<std::size_t>(first), n);
    auto ms_from_start = [&](double index) { return (index / fs - e.start_s) * 1000.0; };

    f["time_delta"] = (e.end_s - e.start_s) * 1000.0;
    const std::size_t pk = first_max(env);
    f["onset_time"] = ms_from_start(static_cast<double>(first + static_cast<long>(pk)));
    f["exit_time"] = f["time_delta"] - f["onset_time"];
    f["peak_spread"] = spread_len(env, 0.6) / fs * 1000.0;
    f["peak_width"] = level_width(env, 0.6) / fs * 1000.0;
    const double c = half_area(env);
    if (!std::isnan(c)) f["peak_centroid"] = ms_from_start(static_cast<double>(first) + c);

    if (n >= 2) {
        std::size_t changes = 0;
        double prev = 0.0;
        for (double v : x) {
            if (v == 0.0) continue;
            if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++changes;
            prev = v;
        }
        f["zero_cross_rate"] = static_cast<double>(changes) / (static_cast<double>(n) * 1000.0 / fs);
    }

    if (n >= 4) {
        const std::size_t nfft = 4 * n;
        const auto spec = hann_spectrum(x, nfft);
        const double bin = fs / static_cast<double>(nfft);
        if (*std::max_element(spec.begin(), spec.end()) > 0.0) {
            f["max_freq"] = static_cast<double>(first_max(spec)) * bin;
            f["spectral_spread"] = spread_len(spec, 0.6) * bin;
            f["spectral_width"] = level_width(spec, 0.6) * bin;
            f["spectral_centroid"] = half_area(spec) * bin;
        }
    }

    const double centre = 6.0 / (2.0 * std::numbers::pi);
    std::vector<double> scales;
    for (int i = 0; i < 32; ++i) scales.push_back(centre * fs / (250.0 * std::pow(30.0 / 250.0, i / 31.0)));
    if (static_cast<double>(n) >= *std::max_element(scales.begin(), scales.end())) {
        const auto g = morlet_magnitude(x, scales);
        std::size_t bs = 0, bt = 0;
        std::vector<std::array<double, 3>> maxima;  // value, row, col
        for (std::size_t s = 0; s < g.size(); ++s) {
            for (std::size_t t = 0; t < n; ++t) {
                if (g[s][t] > g[bs][bt]) {
                    bs = s;
                    bt = t;
                }
                bool ge = true, gt = false;
                for (long ds = -1; ds <= 1; ++ds) {
                    for (long dt = -1; dt <= 1; ++dt) {
                        const long r = static_cast<long>(s) + ds, q = static_cast<long>(t) + dt;
                        if ((ds == 0 && dt == 0) || r < 0 || q < 0 || r >= 32 || q >= static_cast<long>(n)) continue;
                        const double u = g[static_cast<std::size_t>(r)][static_cast<std::size_t>(q)];
                        ge = ge && g[s][t] >= u;
                        gt = gt || g[s][t] > u;
                    }
                }
                if (ge && gt) maxima.push_back({g[s][t], static_cast<double>(s), static_cast<double>(t)});
            }
        }
        f["cwt_max_freq"] = centre * fs / scales[bs];
        f["cwt_max_time"] = ms_from_start(static_cast<double>(first + static_cast<long>(bt)));
        std::stable_sort(maxima.begin(), maxima.end(), [](const auto& a, const auto& b) { return a[0] > b[0]; });
        // Maxima under 1e-3 of the largest do not count.
        const bool single = maxima.size() < 2 || maxima[1][0] < 1e-3 * maxima[0][0];
        f["cwt_peak_distance"] =
            single ? 0.0 : std::hypot(maxima[0][1] - maxima[1][1], maxima[0][2] - maxima[1][2]);
    }

    const auto d = level_coeffs.subspan(static_cast<std::size_t>(first), n);
    double energy = 0.0, entropy = 0.0;
    for (double v : d) {
        energy += v * v;
        if (v != 0.0) entropy -= v * v * std::log2(v * v);
    }
    f["dwt_intensity"] = std::sqrt(energy / static_cast<double>(n));
    f["dwt_entropy"] = std::copysign(std::sqrt(std::fabs(entropy)), entropy);

    if (n >= 3) f["katz_fd"] = katz(x);
    f["lyapunov_max"] = lyapunov(x, 4, 10);
    for (auto& [k, v] : f) {
        if (!std::isfinite(v)) v = kNaN;
    }
    return f;
}

Summary summarize(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    auto q = [&](double p) {
        const double pos = p * (n - 1.0);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = static_cast<std::size_t>(std::ceil(pos));
        return v[lo] + (pos - std::floor(pos)) * (v[hi] - v[lo]);
    };
    return {mean, std::sqrt(var / n), q(0.5), q(0.75) - q(0.25), v.front(), v.back()};
}

}  // namespace oracle
