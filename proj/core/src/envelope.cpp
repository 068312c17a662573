#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "pcg/error.hpp"
#include "pcg/preprocess.hpp"

namespace pcg {

std::vector<double> hilbert_magnitude(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) throw Error("hilbert envelope needs at least 2 samples");
    std::vector<detail::cplx> buf(x.begin(), x.end());
    auto spec = detail::fft(buf);
    // Keep DC (and Nyquist for even n), double positive, zero negative bins.
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < n; ++k) {
        if (k < (n + 1) / 2) {
            spec[k] *= 2.0;
        } else if (!(n % 2 == 0 && k == half)) {
            spec[k] = 0.0;
        }
    }
    auto analytic = detail::ifft(spec);
    std::vector<double> env(n);
    for (std::size_t i = 0; i < n; ++i) env[i] = std::abs(analytic[i]);
    return env;
}

Signal hilbert_envelope(const Signal& sig) {
    return sig.derive(hilbert_magnitude(sig.samples()), format_step("hilbert_envelope"));
}

Signal homomorphic_envelope(const Signal& sig, double lpf_cutoff_hz, int lpf_order) {
    auto env = hilbert_magnitude(sig.samples());
    const double peak = *std::max_element(env.begin(), env.end());
    const double eps = 1e-12 * std::max(peak, 1.0);
    for (auto& v : env) v = std::log(std::max(v, eps));
    const SosFilter lpf = design_butterworth({lpf_order, FilterKind::lowpass, {lpf_cutoff_hz}, true}, sig.fs());
    auto smooth = sosfiltfilt(lpf, env);
    for (auto& v : smooth) v = std::exp(v);
    return sig.derive(std::move(smooth),
                      format_step("homomorphic_envelope", {{"lpf_cutoff_hz", format_number(lpf_cutoff_hz)},
                                                           {"lpf_order", std::to_string(lpf_order)}}));
}

}  // namespace pcg
