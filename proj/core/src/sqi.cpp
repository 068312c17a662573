#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fft.hpp"
#include "pcg/error.hpp"
#include "pcg/preprocess.hpp"
#include "pcg/sqi.hpp"

namespace pcg {
namespace {

double population_std(std::span<const double> x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(x.size()));
}

}  // namespace

double kurtosis(std::span<const double> x) {
    if (x.empty()) throw Error("kurtosis of empty input");
    double m2 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double s = v * v;
        m2 += s;
        m4 += s * s;
    }
    const auto n = static_cast<double>(x.size());
    m2 /= n;
    m4 /= n;
    if (m2 == 0.0) throw Error("zero second moment");
    return m4 / (m2 * m2);
}

double kurtosis(const Signal& sig) { return kurtosis(sig.samples()); }

double envelope_std(const Signal& env) { return population_std(env.samples()); }

AutocorrPeak autocorr_max(const Signal& env, double min_lag_s, double max_lag_s) {
    if (!(min_lag_s > 0.0 && min_lag_s < max_lag_s)) {
        throw Error("autocorrelation lag window needs 0 < min < max");
    }
    if (!(max_lag_s < env.duration_s())) {
        throw Error("autocorrelation lag window (max " + format_number(max_lag_s) +
                    " s) exceeds the signal duration " + format_number(env.duration_s()) + " s");
    }
    const std::size_t n = env.size();
    const auto lo = static_cast<std::size_t>(std::ceil(min_lag_s * env.fs() - 1e-9));
    const auto hi = std::min(static_cast<std::size_t>(std::floor(max_lag_s * env.fs() + 1e-9)), n - 1);
    if (lo > hi) throw Error("autocorrelation lag window contains no whole-sample lag");

    std::size_t nfft = 1;
    while (nfft < 2 * n) nfft *= 2;
    auto spec = detail::rfft(env.samples(), nfft);
    std::vector<detail::cplx> full(nfft);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        full[k] = std::norm(spec[k]);
        if (k > 0 && k < nfft - k) full[nfft - k] = full[k];
    }
    const auto r = detail::ifft(full);
    const double energy = r[0].real();
    if (!(energy > 0.0)) throw Error("autocorrelation of an all-zero envelope");
    AutocorrPeak best{-2.0, 0.0};
    for (std::size_t l = lo; l <= hi; ++l) {
        const double v = r[l].real() / energy;
        if (v > best.value) best = {v, static_cast<double>(l) / env.fs()};
    }
    best.value = std::min(best.value, 1.0);
    return best;
}

double sample_entropy(std::span<const double> x, int m, std::optional<double> r) {
    if (m < 1) throw Error("sample entropy needs m >= 1");
    const std::size_t n = x.size();
    const auto mm = static_cast<std::size_t>(m);
    if (n <= mm + 1) throw Error("sample entropy needs more than m + 1 samples");
    const double tol = r ? *r : 0.2 * population_std(x);
    if (tol < 0.0) throw Error("sample entropy tolerance must be non-negative");

    const std::size_t templates = n - mm;
    std::uint64_t a = 0, b = 0;
    for (std::size_t i = 0; i + 1 < templates; ++i) {
        for (std::size_t j = i + 1; j < templates; ++j) {
            std::size_t k = 0;
            while (k < mm && std::abs(x[i + k] - x[j + k]) <= tol) ++k;
            if (k < mm) continue;
            ++b;
            if (std::abs(x[i + mm] - x[j + mm]) <= tol) ++a;
        }
    }
    if (a == 0 || b == 0) throw Error("insufficient matches");
    return -std::log(static_cast<double>(a) / static_cast<double>(b));
}

double sample_entropy(const Signal& sig, int m, std::optional<double> r) {
    return sample_entropy(sig.samples(), m, r);
}

SqiReport compute_sqi(const Signal& sig, const SqiConfig& config) {
    SqiReport rep;
    rep.kurtosis = kurtosis(sig);
    const Signal env = homomorphic_envelope(sig, config.lpf_cutoff_hz, config.lpf_order);
    rep.env_std = envelope_std(env);
    const auto peak = autocorr_max(env, config.min_lag_s, config.max_lag_s);
    rep.autocorr_max = peak.value;
    rep.autocorr_lag_s = peak.lag_s;
    const Signal slow = env.fs() > config.sampen_rate_hz ? resample(env, config.sampen_rate_hz) : env;
    rep.samp_en = sample_entropy(slow.samples(), config.sampen_m,
                                 config.sampen_r_factor * population_std(slow.samples()));
    rep.degree_of_periodicity = degree_of_periodicity(sig, config.cyclic);
    return rep;
}

}  // namespace pcg
