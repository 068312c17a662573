#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "pcg/error.hpp"
#include "pcg/sqi.hpp"

namespace pcg {

std::vector<double> CyclicSpectrumParams::default_alpha_grid() {
    std::vector<double> grid(64);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.5 + 3.0 * static_cast<double>(i) / 63.0;
    return grid;
}

std::vector<double> cyclic_spectral_profile(const Signal& sig, const CyclicSpectrumParams& params) {
    if (params.alpha_grid.empty()) throw Error("cycle frequency grid is empty");
    for (double a : params.alpha_grid) {
        if (!(a > 0.0)) throw Error("cycle frequencies must be positive, got " + format_number(a));
    }
    const double alpha_min = *std::min_element(params.alpha_grid.begin(), params.alpha_grid.end());
    if (sig.duration_s() < 4.0 / alpha_min) {
        throw Error("signal of " + format_number(sig.duration_s()) + " s is too short for cycle frequency " +
                    format_number(alpha_min) + " Hz (needs " + format_number(4.0 / alpha_min) + " s)");
    }
    if (!(params.frame_length_s > 0.0) || !(params.overlap >= 0.0 && params.overlap < 1.0)) {
        throw Error("cyclic spectrum needs a positive frame length and overlap in [0, 1)");
    }
    const std::size_t n = sig.size();
    const std::size_t len = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(params.frame_length_s * sig.fs())), 2, n);
    const std::size_t hop =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(len) * (1.0 - params.overlap))));
    const std::size_t frames = (n - len) / hop + 1;

    std::vector<double> window(len);
    double wsum = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(len));
        wsum += window[i] * window[i];
    }
    const auto& x = sig.data();
    const double df = sig.fs() / static_cast<double>(len);

    std::vector<double> gamma;
    gamma.reserve(params.alpha_grid.size());
    std::vector<detail::cplx> u(len), acc(len);
    for (double alpha : params.alpha_grid) {
        std::fill(acc.begin(), acc.end(), detail::cplx{});
        for (std::size_t f = 0; f < frames; ++f) {
            const std::size_t start = f * hop;
            for (std::size_t i = 0; i < len; ++i) {
                const double t = static_cast<double>(start + i) / sig.fs();
                u[i] = std::polar(window[i] * x[start + i], -std::numbers::pi * alpha * t);
            }
            // The +alpha/2 demodulated frame is conj(u), so its spectrum at f
            // is conj(U(-f)) and the cross product reduces to U(f) U(-f).
            const auto spec = detail::fft(u);
            for (std::size_t k = 0; k < len; ++k) acc[k] += spec[k] * spec[(len - k) % len];
        }
        const double norm = static_cast<double>(frames) * wsum * sig.fs();
        double g = 0.0;
        for (const auto& v : acc) g += std::abs(v) / norm * df;
        gamma.push_back(g);
    }
    return gamma;
}

double degree_of_periodicity(const Signal& sig, const CyclicSpectrumParams& params) {
    auto gamma = cyclic_spectral_profile(sig, params);
    const double peak = *std::max_element(gamma.begin(), gamma.end());
    const std::size_t mid = gamma.size() / 2;
    std::nth_element(gamma.begin(), gamma.begin() + static_cast<std::ptrdiff_t>(mid), gamma.end());
    double median = gamma[mid];
    if (gamma.size() % 2 == 0) {
        median = 0.5 * (median + *std::max_element(gamma.begin(), gamma.begin() + static_cast<std::ptrdiff_t>(mid)));
    }
    if (!(median > 0.0)) throw Error("cycle frequency spectrum is zero");
    return peak / median;
}

}  // namespace pcg
