#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "pcg/error.hpp"
#include "pcg/preprocess.hpp"
#include "pcg/wavelet.hpp"

namespace pcg {
namespace {

double median_abs(std::vector<double> v) {
    for (auto& x : v) x = std::abs(x);
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

double soft(double x, double t) {
    const double m = std::abs(x) - t;
    return m > 0.0 ? std::copysign(m, x) : 0.0;
}

// Row p of the hat matrix V (V^T V)^-1 V^T for a window of length len.
Eigen::VectorXd savgol_weights(int len, int degree, int p) {
    Eigen::MatrixXd v(len, degree + 1);
    const double centre = 0.5 * (len - 1);
    for (int i = 0; i < len; ++i) {
        double t = 1.0;
        for (int d = 0; d <= degree; ++d) {
            v(i, d) = t;
            t *= (i - centre);
        }
    }
    const Eigen::MatrixXd pinv = v.completeOrthogonalDecomposition().pseudoInverse();
    return (v.row(p) * pinv).transpose();
}

std::string param(const Params& params, std::string_view key, std::string fallback,
                  std::vector<std::string>& used) {
    used.emplace_back(key);
    for (const auto& [k, v] : params) {
        if (k == key) return v;
    }
    return fallback;
}

double to_double(const std::string& s, std::string_view key) {
    if (s.empty()) throw Error("missing parameter '" + std::string(key) + "'");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) {
        throw Error("parameter '" + std::string(key) + "' is not a number: '" + s + "'");
    }
    return v;
}

int to_int(const std::string& s, std::string_view key) {
    const double v = to_double(s, key);
    if (v != std::floor(v)) throw Error("parameter '" + std::string(key) + "' must be an integer");
    return static_cast<int>(v);
}

}  // namespace

Signal wavelet_denoise(const Signal& sig, int levels, std::string_view wavelet, std::optional<double> threshold) {
    auto res = dwt(sig.samples(), sig.fs(), wavelet, levels);
    double t = 0.0;
    if (threshold) {
        if (*threshold < 0.0) throw Error("denoise threshold must be non-negative");
        t = *threshold;
    } else {
        const double sigma = median_abs(res.details.front()) / 0.6745;
        t = sigma * std::sqrt(2.0 * std::log(static_cast<double>(sig.size())));
    }
    for (auto& level : res.details) {
        for (auto& c : level) c = soft(c, t);
    }
    return sig.derive(idwt_samples(res),
                      format_step("wavelet_denoise", {{"levels", std::to_string(levels)},
                                                      {"wavelet", std::string(wavelet)},
                                                      {"threshold", threshold ? format_number(t) : "auto"}}));
}

std::vector<double> savgol_smooth(std::span<const double> x, int window, int degree) {
    if (degree < 0) throw Error("savgol degree must be non-negative");
    if (window <= degree) {
        throw Error("savgol window (" + std::to_string(window) + ") must exceed degree (" +
                    std::to_string(degree) + ")");
    }
    const int n = static_cast<int>(x.size());
    if (n <= degree) return {x.begin(), x.end()};
    const int len = std::min(window, n);
    const int before = len / 2;  // samples preceding i in an interior window
    std::map<int, Eigen::VectorXd> cache;
    auto weights = [&](int p) -> const Eigen::VectorXd& {
        auto it = cache.find(p);
        if (it == cache.end()) it = cache.emplace(p, savgol_weights(len, degree, p)).first;
        return it->second;
    };
    std::vector<double> y(x.size());
    for (int i = 0; i < n; ++i) {
        const int start = std::clamp(i - before, 0, n - len);
        const auto& w = weights(i - start);
        double acc = 0.0;
        for (int k = 0; k < len; ++k) acc += w[k] * x[static_cast<std::size_t>(start + k)];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

Signal savgol_smooth_levels(const Signal& sig, int levels, std::string_view wavelet, int window, int degree) {
    if (window <= degree) {
        throw Error("savgol window (" + std::to_string(window) + ") must exceed degree (" +
                    std::to_string(degree) + ")");
    }
    auto res = dwt(sig.samples(), sig.fs(), wavelet, levels);
    for (auto& level : res.details) level = savgol_smooth(level, window, degree);
    return sig.derive(idwt_samples(res),
                      format_step("savgol_smooth_levels", {{"levels", std::to_string(levels)},
                                                           {"wavelet", std::string(wavelet)},
                                                           {"window", std::to_string(window)},
                                                           {"degree", std::to_string(degree)}}));
}

PipelineStep make_step(std::string_view name, const Params& params) {
    std::vector<std::string> used;
    PipelineStep step;
    step.name = std::string(name);
    step.params = params;
    if (name == "resample") {
        const double target = to_double(param(params, "target_fs", "", used), "target_fs");
        step.apply = [target](const Signal& s) { return resample(s, target); };
    } else if (name == "butterworth") {
        FilterSpec spec;
        spec.order = to_int(param(params, "order", "2", used), "order");
        const auto kind_text = param(params, "kind", "lowpass", used);
        const auto kind = parse_filter_kind(kind_text);
        if (!kind) throw Error("unknown filter kind '" + kind_text + "'");
        spec.kind = *kind;
        const auto cut = param(params, "cutoff_hz", "", used);
        const auto dash = cut.find('-', 1);
        if (dash == std::string::npos) {
            spec.cutoff_hz = {to_double(cut, "cutoff_hz")};
        } else {
            spec.cutoff_hz = {to_double(cut.substr(0, dash), "cutoff_hz"), to_double(cut.substr(dash + 1), "cutoff_hz")};
        }
        const auto zp = param(params, "zero_phase", "true", used);
        if (zp != "true" && zp != "false") throw Error("zero_phase must be true or false");
        spec.zero_phase = zp == "true";
        step.apply = [spec](const Signal& s) { return butterworth(s, spec); };
    } else if (name == "hilbert_envelope") {
        step.apply = [](const Signal& s) { return hilbert_envelope(s); };
    } else if (name == "homomorphic_envelope") {
        const double cutoff = to_double(param(params, "lpf_cutoff_hz", "8", used), "lpf_cutoff_hz");
        const int order = to_int(param(params, "lpf_order", "1", used), "lpf_order");
        step.apply = [cutoff, order](const Signal& s) { return homomorphic_envelope(s, cutoff, order); };
    } else if (name == "wavelet_denoise") {
        const int levels = to_int(param(params, "levels", "", used), "levels");
        const auto wavelet = param(params, "wavelet", "db6", used);
        const auto t = param(params, "threshold", "auto", used);
        std::optional<double> threshold;
        if (t != "auto") threshold = to_double(t, "threshold");
        step.apply = [=](const Signal& s) { return wavelet_denoise(s, levels, wavelet, threshold); };
    } else if (name == "savgol_smooth_levels") {
        const int levels = to_int(param(params, "levels", "", used), "levels");
        const auto wavelet = param(params, "wavelet", "db6", used);
        const int window = to_int(param(params, "window", "10", used), "window");
        const int degree = to_int(param(params, "degree", "3", used), "degree");
        step.apply = [=](const Signal& s) { return savgol_smooth_levels(s, levels, wavelet, window, degree); };
    } else {
        throw Error("unknown processing step '" + std::string(name) + "'");
    }
    for (const auto& [k, v] : params) {
        if (std::find(used.begin(), used.end(), k) == used.end()) {
            throw Error("step '" + std::string(name) + "' has no parameter '" + k + "'");
        }
    }
    return step;
}

}  // namespace pcg
