#include "pcg/signal.hpp"

#include <cmath>
#include <cstdio>

#include "pcg/error.hpp"

namespace pcg {

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", value);
    return buf;
}

std::string format_step(std::string_view name, const Params& params) {
    std::string out(name);
    out += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i > 0) out += ',';
        out += params[i].first;
        out += '=';
        out += params[i].second;
    }
    out += ')';
    return out;
}

Signal::Signal(std::vector<double> samples, double fs, std::vector<std::string> log)
    : samples_(std::move(samples)), fs_(fs), log_(std::move(log)) {
    if (!(fs_ > 0.0) || !std::isfinite(fs_)) {
        throw Error("sampling rate must be positive, got " + format_number(fs_));
    }
    if (samples_.empty()) {
        throw Error("signal must contain at least one sample");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(samples_[i])) {
            throw Error("non-finite sample at index " + std::to_string(i));
        }
    }
}

Signal Signal::derive(std::vector<double> samples, std::string entry) const {
    return derive(std::move(samples), fs_, std::move(entry));
}

Signal Signal::derive(std::vector<double> samples, double fs, std::string entry) const {
    auto log = log_;
    log.push_back(std::move(entry));
    return Signal(std::move(samples), fs, std::move(log));
}

double duration_s(const Signal& sig) { return sig.duration_s(); }

std::vector<Signal> slice(const Signal& sig, double window_s, double overlap_fraction) {
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
        throw Error("overlap fraction must lie in [0, 1)");
    }
    if (!(window_s > 0.0)) {
        throw Error("window length must be positive");
    }
    const auto window = static_cast<std::size_t>(std::llround(window_s * sig.fs()));
    if (window == 0) {
        throw Error("window shorter than one sample");
    }
    if (window > sig.size()) {
        throw Error("window exceeds signal");
    }
    auto hop = static_cast<std::size_t>(std::llround(static_cast<double>(window) * (1.0 - overlap_fraction)));
    hop = std::max<std::size_t>(hop, 1);

    const std::size_t count = (sig.size() - window) / hop + 1;
    std::vector<Signal> out;
    out.reserve(count);
    const auto& x = sig.data();
    for (std::size_t k = 0; k < count; ++k) {
        const auto begin = x.begin() + static_cast<std::ptrdiff_t>(k * hop);
        std::vector<double> part(begin, begin + static_cast<std::ptrdiff_t>(window));
        out.push_back(sig.derive(std::move(part),
                                 format_step("slice", {{"window_s", format_number(window_s)},
                                                       {"overlap", format_number(overlap_fraction)},
                                                       {"index", std::to_string(k)}})));
    }
    return out;
}

}  // namespace pcg
