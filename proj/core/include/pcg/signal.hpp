#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pcg {

/// Ordered (key, value) pairs describing a processing step's parameters.
using Params = std::vector<std::pair<std::string, std::string>>;

/// Formats a number the way log entries and parameter maps print it (%g).
std::string format_number(double value);

/// Builds a log entry of the form "name(key=value,key=value)".
std::string format_step(std::string_view name, const Params& params = {});

/// A single-channel sampled recording.
///
/// Samples are stored as double regardless of the source bit depth. A Signal
/// is immutable: every transform returns a new Signal whose log is the input
/// log plus one entry describing the transform.
class Signal {
public:
    /// Throws pcg::Error unless fs > 0, at least one sample is given and all
    /// samples are finite.
    Signal(std::vector<double> samples, double fs, std::vector<std::string> log = {});

    std::span<const double> samples() const noexcept { return samples_; }
    const std::vector<double>& data() const noexcept { return samples_; }
    double fs() const noexcept { return fs_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const std::vector<std::string>& log() const noexcept { return log_; }

    double duration_s() const noexcept { return static_cast<double>(samples_.size()) / fs_; }

    /// New signal at the same rate with `entry` appended to the log.
    Signal derive(std::vector<double> samples, std::string entry) const;
    /// New signal at rate `fs` with `entry` appended to the log.
    Signal derive(std::vector<double> samples, double fs, std::string entry) const;

    bool operator==(const Signal&) const = default;

private:
    std::vector<double> samples_;
    double fs_;
    std::vector<std::string> log_;
};

/// len(samples) / fs.
double duration_s(const Signal& sig);

/// Cuts `sig` into windows of round(window_s * fs) samples with hop
/// window * (1 - overlap_fraction). The trailing partial window is dropped.
std::vector<Signal> slice(const Signal& sig, double window_s, double overlap_fraction = 0.0);

}  // namespace pcg
