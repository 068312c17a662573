#include <cmath>
#include <numbers>

#include "pcg/error.hpp"
#include "pcg/wavelet.hpp"

namespace pcg {
namespace {

constexpr double kMorletW0 = 6.0;

void check_wavelet(std::string_view wavelet) {
    if (wavelet != "morlet") throw Error("unknown continuous wavelet '" + std::string(wavelet) + "'");
}

std::ptrdiff_t reflect(std::ptrdiff_t i, std::ptrdiff_t n) {
    const std::ptrdiff_t period = 2 * n;
    std::ptrdiff_t m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

}  // namespace

double scale_to_frequency(double scale, double fs, std::string_view wavelet) {
    check_wavelet(wavelet);
    return kMorletW0 / (2.0 * std::numbers::pi) * fs / scale;
}

std::vector<double> scales_for_band(double f_low, double f_high, std::size_t count, double fs,
                                    std::string_view wavelet) {
    check_wavelet(wavelet);
    if (!(f_low > 0.0 && f_high > f_low) || count < 2) {
        throw Error("scale grid needs 0 < f_low < f_high and at least 2 scales");
    }
    const double centre = kMorletW0 / (2.0 * std::numbers::pi);
    std::vector<double> scales(count);
    const double ratio = std::pow(f_low / f_high, 1.0 / static_cast<double>(count - 1));
    double f = f_high;
    for (std::size_t i = 0; i < count; ++i, f *= ratio) scales[i] = centre * fs / f;
    return scales;
}

CwtResult cwt(std::span<const double> x, double fs, std::span<const double> scales, std::string_view wavelet) {
    check_wavelet(wavelet);
    if (scales.empty()) throw Error("cwt: empty scale list");
    for (double a : scales) {
        if (!(a > 0.0) || !std::isfinite(a)) throw Error("cwt: scales must be positive, got " + format_number(a));
    }
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    if (n == 0) throw Error("cwt: empty input");
    const double norm = std::pow(std::numbers::pi, -0.25);

    CwtResult res;
    res.scales.assign(scales.begin(), scales.end());
    res.fs = fs;
    res.wavelet = std::string(wavelet);
    res.coefficients.resize(scales.size());
    for (std::size_t s = 0; s < scales.size(); ++s) {
        const double a = scales[s];
        const auto half = static_cast<std::ptrdiff_t>(std::ceil(5.0 * a));
        // conj(psi((k - b) / a)) / sqrt(a), indexed by k - b + half.
        std::vector<std::complex<double>> kernel(static_cast<std::size_t>(2 * half + 1));
        for (std::ptrdiff_t m = -half; m <= half; ++m) {
            const double t = static_cast<double>(m) / a;
            const double g = norm * std::exp(-0.5 * t * t) / std::sqrt(a);
            kernel[static_cast<std::size_t>(m + half)] = std::polar(g, -kMorletW0 * t);
        }
        auto& row = res.coefficients[s];
        row.assign(static_cast<std::size_t>(n), {0.0, 0.0});
        for (std::ptrdiff_t b = 0; b < n; ++b) {
            std::complex<double> acc = 0.0;
            for (std::ptrdiff_t m = -half; m <= half; ++m) {
                const std::ptrdiff_t k = b + m;
                const double v = (k >= 0 && k < n) ? x[static_cast<std::size_t>(k)] : x[static_cast<std::size_t>(reflect(k, n))];
                acc += v * kernel[static_cast<std::size_t>(m + half)];
            }
            row[static_cast<std::size_t>(b)] = acc;
        }
    }
    return res;
}

CwtResult cwt(const Signal& sig, std::span<const double> scales, std::string_view wavelet) {
    return cwt(sig.samples(), sig.fs(), scales, wavelet);
}

}  // namespace pcg
