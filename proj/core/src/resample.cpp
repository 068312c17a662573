#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "pcg/error.hpp"
#include "pcg/preprocess.hpp"

namespace pcg {
namespace {

struct Ratio {
    std::int64_t up;
    std::int64_t down;
};

bool near_integer(double v) { return std::abs(v - std::round(v)) < 1e-9 * std::max(1.0, std::abs(v)); }

Ratio rational_ratio(double fs, double target) {
    if (near_integer(fs) && near_integer(target) && fs < 1e9 && target < 1e9) {
        const auto a = static_cast<std::int64_t>(std::llround(target));
        const auto b = static_cast<std::int64_t>(std::llround(fs));
        const auto g = std::gcd(a, b);
        return {a / g, b / g};
    }
    // Continued-fraction approximation of target / fs.
    const double x = target / fs;
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        const auto a = static_cast<std::int64_t>(std::floor(r));
        const std::int64_t h2 = a * h1 + h0;
        const std::int64_t k2 = a * k1 + k0;
        if (k2 > 10000 || h2 > 10000) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        const double frac = r - static_cast<double>(a);
        if (frac < 1e-12 || std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) < 1e-12 * x) break;
        r = 1.0 / frac;
    }
    if (h1 == 0 || k1 == 0) throw Error("resample: cannot approximate rate ratio");
    return {h1, k1};
}

std::vector<double> kaiser_lowpass(std::int64_t half, double cutoff, double gain) {
    constexpr double beta = 5.0;
    const std::int64_t len = 2 * half + 1;
    std::vector<double> h(static_cast<std::size_t>(len));
    const double i0b = std::cyl_bessel_i(0.0, beta);
    double sum = 0.0;
    for (std::int64_t n = 0; n < len; ++n) {
        const double m = static_cast<double>(n - half);
        const double arg = cutoff * m;
        const double sinc = m == 0 ? 1.0 : std::sin(std::numbers::pi * arg) / (std::numbers::pi * arg);
        const double t = 2.0 * static_cast<double>(n) / static_cast<double>(len - 1) - 1.0;
        const double w = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - t * t))) / i0b;
        h[static_cast<std::size_t>(n)] = cutoff * sinc * w;
        sum += h[static_cast<std::size_t>(n)];
    }
    for (auto& v : h) v *= gain / sum;
    return h;
}

}  // namespace

std::vector<double> resample_samples(std::span<const double> x, double fs, double target_fs) {
    if (!(target_fs > 0.0) || !std::isfinite(target_fs)) {
        throw Error("resample: target rate must be positive, got " + format_number(target_fs));
    }
    if (!(fs > 0.0)) throw Error("resample: source rate must be positive");
    const auto n_in = static_cast<std::int64_t>(x.size());
    const auto n_out = static_cast<std::int64_t>(std::llround(static_cast<double>(n_in) * target_fs / fs));
    if (target_fs == fs) return {x.begin(), x.end()};
    if (n_out < 1) throw Error("resample: output would be empty");

    const Ratio r = rational_ratio(fs, target_fs);
    const std::int64_t max_rate = std::max(r.up, r.down);
    const std::int64_t half = 10 * max_rate;
    const auto h = kaiser_lowpass(half, 1.0 / static_cast<double>(max_rate), static_cast<double>(r.up));
    const auto taps = static_cast<std::int64_t>(h.size());

    std::vector<double> y(static_cast<std::size_t>(n_out), 0.0);
    for (std::int64_t j = 0; j < n_out; ++j) {
        // Position in the zero-stuffed domain, centred on the filter.
        const std::int64_t t = j * r.down + half;
        std::int64_t i_lo = t - taps + 1;
        i_lo = i_lo <= 0 ? 0 : (i_lo + r.up - 1) / r.up;
        std::int64_t i_hi = std::min(t / r.up, n_in - 1);
        double acc = 0.0;
        for (std::int64_t i = i_lo; i <= i_hi; ++i) {
            acc += h[static_cast<std::size_t>(t - i * r.up)] * x[static_cast<std::size_t>(i)];
        }
        y[static_cast<std::size_t>(j)] = acc;
    }
    return y;
}

Signal resample(const Signal& sig, double target_fs) {
    auto y = resample_samples(sig.samples(), sig.fs(), target_fs);
    return sig.derive(std::move(y), target_fs, format_step("resample", {{"target_fs", format_number(target_fs)}}));
}

}  // namespace pcg
