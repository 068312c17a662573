#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "pcg/error.hpp"
#include "pcg/wavelet.hpp"
#include "wavelet_filters.hpp"

namespace pcg {
namespace {

// Half-sample symmetric extension: x[-1] = x[0], x[n] = x[n-1].
std::size_t reflect(std::ptrdiff_t i, std::ptrdiff_t n) {
    const std::ptrdiff_t period = 2 * n;
    std::ptrdiff_t m = i % period;
    if (m < 0) m += period;
    return static_cast<std::size_t>(m < n ? m : period - 1 - m);
}

void analysis_step(const std::vector<double>& x, const Wavelet& w, std::vector<double>& approx,
                   std::vector<double>& detail) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const auto f = static_cast<std::ptrdiff_t>(w.dec_lo.size());
    const std::size_t out = static_cast<std::size_t>((n + f - 1) / 2);
    approx.assign(out, 0.0);
    detail.assign(out, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
        double a = 0.0;
        double d = 0.0;
        const auto base = static_cast<std::ptrdiff_t>(2 * o + 1);
        for (std::ptrdiff_t j = 0; j < f; ++j) {
            const std::ptrdiff_t idx = base - j;
            const double v = (idx >= 0 && idx < n) ? x[static_cast<std::size_t>(idx)] : x[reflect(idx, n)];
            a += w.dec_lo[static_cast<std::size_t>(j)] * v;
            d += w.dec_hi[static_cast<std::size_t>(j)] * v;
        }
        approx[o] = a;
        detail[o] = d;
    }
}

std::vector<double> synthesis_step(const std::vector<double>& a, const std::vector<double>& d, const Wavelet& w) {
    const auto n = static_cast<std::ptrdiff_t>(a.size());
    const auto f = static_cast<std::ptrdiff_t>(w.rec_lo.size());
    const std::ptrdiff_t out_len = 2 * n - f + 2;
    if (out_len <= 0) throw Error("idwt: level too short for the filter length");
    std::vector<double> out(static_cast<std::size_t>(out_len), 0.0);
    // Full convolution of the zero-stuffed coefficients with the synthesis
    // filters, keeping samples f-2 .. f-2+out_len-1.
    for (std::ptrdiff_t o = 0; o < out_len; ++o) {
        const std::ptrdiff_t t = o + f - 2;
        double acc = 0.0;
        for (std::ptrdiff_t j = (t % 2); j < f; j += 2) {
            const std::ptrdiff_t i = (t - j) / 2;
            if (i < 0) break;
            if (i >= n) continue;
            acc += w.rec_lo[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(i)] +
                   w.rec_hi[static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(i)];
        }
        out[static_cast<std::size_t>(o)] = acc;
    }
    return out;
}

}  // namespace

Wavelet wavelet_by_name(std::string_view name) {
    int order = 0;
    if (name == "haar") {
        order = 1;
    } else if (name.size() >= 3 && name.substr(0, 2) == "db") {
        const std::string digits(name.substr(2));
        char* end = nullptr;
        const long v = std::strtol(digits.c_str(), &end, 10);
        if (end == digits.c_str() + digits.size()) order = static_cast<int>(v);
    }
    if (order < 1 || order > 10) {
        throw Error("unknown wavelet family '" + std::string(name) + "' (expected haar or db1..db10)");
    }
    Wavelet w;
    w.name = std::string(name);
    w.dec_lo = detail::daubechies_dec_lo()[static_cast<std::size_t>(order - 1)];
    const std::size_t f = w.dec_lo.size();
    w.rec_lo.assign(w.dec_lo.rbegin(), w.dec_lo.rend());
    w.rec_hi.resize(f);
    for (std::size_t k = 0; k < f; ++k) w.rec_hi[k] = (k % 2 == 0 ? 1.0 : -1.0) * w.dec_lo[k];
    w.dec_hi.assign(w.rec_hi.rbegin(), w.rec_hi.rend());
    return w;
}

int max_dwt_level(std::size_t n) {
    int level = 0;
    while (n >= 2) {
        n /= 2;
        ++level;
    }
    return level;
}

DwtResult dwt(std::span<const double> x, double fs, std::string_view wavelet, int levels) {
    const Wavelet w = wavelet_by_name(wavelet);
    if (levels < 1) throw Error("dwt: need at least one level, got " + std::to_string(levels));
    const int max_level = max_dwt_level(x.size());
    if (levels > max_level) {
        throw Error("dwt: " + std::to_string(levels) + " levels requested but a " + std::to_string(x.size()) +
                    "-sample signal supports at most " + std::to_string(max_level));
    }
    DwtResult res;
    res.wavelet = w.name;
    res.level_count = levels;
    res.fs = fs;
    std::vector<double> a(x.begin(), x.end());
    std::vector<double> next, d;
    for (int level = 0; level < levels; ++level) {
        res.input_lengths.push_back(a.size());
        analysis_step(a, w, next, d);
        res.details.push_back(d);
        a.swap(next);
    }
    res.approximation = std::move(a);
    return res;
}

DwtResult dwt(const Signal& sig, std::string_view wavelet, int levels) {
    auto res = dwt(sig.samples(), sig.fs(), wavelet, levels);
    res.log = sig.log();
    return res;
}

std::vector<double> idwt_samples(const DwtResult& res) {
    if (res.details.empty()) throw Error("idwt: no detail levels");
    if (res.details.size() != static_cast<std::size_t>(res.level_count) ||
        res.input_lengths.size() != res.details.size()) {
        throw Error("idwt: level count does not match stored levels");
    }
    const Wavelet w = wavelet_by_name(res.wavelet);
    std::vector<double> a = res.approximation;
    for (std::size_t level = res.details.size(); level-- > 0;) {
        const auto& d = res.details[level];
        if (a.size() == d.size() + 1) a.pop_back();
        if (a.size() != d.size()) {
            throw Error("idwt: level " + std::to_string(level + 1) + " has " + std::to_string(d.size()) +
                        " detail coefficients but " + std::to_string(a.size()) + " approximation coefficients");
        }
        a = synthesis_step(a, d, w);
        const std::size_t want = res.input_lengths[level];
        if (a.size() < want) {
            throw Error("idwt: level " + std::to_string(level + 1) + " reconstructs " + std::to_string(a.size()) +
                        " samples, expected " + std::to_string(want));
        }
        a.resize(want);
    }
    return a;
}

Signal idwt(const DwtResult& res) {
    if (!(res.fs > 0.0)) throw Error("idwt: missing sampling rate");
    auto log = res.log;
    log.push_back(format_step("idwt", {{"wavelet", res.wavelet}, {"levels", std::to_string(res.level_count)}}));
    return Signal(idwt_samples(res), res.fs, std::move(log));
}

std::vector<double> upsample_level_to_signal(const DwtResult& res, int level) {
    if (level < 1 || level > res.level_count || static_cast<std::size_t>(level) > res.details.size()) {
        throw Error("dwt level " + std::to_string(level) + " out of range 1.." + std::to_string(res.level_count));
    }
    if (res.input_lengths.empty()) throw Error("dwt result has no input length");
    const auto f = static_cast<double>(wavelet_by_name(res.wavelet).dec_lo.size());
    // Coefficient o of level l is centred on input sample 2^l * o + offset.
    double offset = 0.0;
    double step = 1.0;
    for (int l = 1; l <= level; ++l) {
        offset -= step * (f - 3.0) / 2.0;
        step *= 2.0;
    }
    const auto& d = res.details[static_cast<std::size_t>(level - 1)];
    const std::size_t n = res.input_lengths.front();
    const auto last = static_cast<double>(d.size() - 1);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = std::clamp(std::round((static_cast<double>(i) - offset) / step), 0.0, last);
        out[i] = d[static_cast<std::size_t>(k)];
    }
    return out;
}

}  // namespace pcg
