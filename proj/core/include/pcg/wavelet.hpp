#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcg/signal.hpp"

namespace pcg {

/// Orthogonal filter bank. Names: "haar", "db1" ... "db10".
struct Wavelet {
    std::string name;
    std::vector<double> dec_lo, dec_hi, rec_lo, rec_hi;
};

Wavelet wavelet_by_name(std::string_view name);

/// floor(log2(n)).
int max_dwt_level(std::size_t n);

struct DwtResult {
    std::vector<std::vector<double>> details;  // details[0] is D1
    std::vector<double> approximation;         // A_k
    std::string wavelet;
    int level_count = 0;
    std::vector<std::size_t> input_lengths;    // length entering each level
    double fs = 0.0;
    std::vector<std::string> log;
};

/// Multilevel decomposition with half-sample symmetric extension.
DwtResult dwt(const Signal& sig, std::string_view wavelet, int levels);
DwtResult dwt(std::span<const double> x, double fs, std::string_view wavelet, int levels);

std::vector<double> idwt_samples(const DwtResult& res);
Signal idwt(const DwtResult& res);

/// Maps every input sample to the nearest detail coefficient of `level`
/// (1-based), accounting for the filter delay of the cascade.
std::vector<double> upsample_level_to_signal(const DwtResult& res, int level);

struct CwtResult {
    std::vector<std::vector<std::complex<double>>> coefficients;  // scales x time
    std::vector<double> scales;                                   // in samples
    double fs = 0.0;
    std::string wavelet;
};

/// Complex Morlet (w0 = 6) transform normalized by 1/sqrt(scale) with
/// symmetric extension at the edges.
CwtResult cwt(const Signal& sig, std::span<const double> scales, std::string_view wavelet = "morlet");
CwtResult cwt(std::span<const double> x, double fs, std::span<const double> scales,
              std::string_view wavelet = "morlet");

/// Nominal frequency of a scale: wavelet center frequency * fs / scale.
double scale_to_frequency(double scale, double fs, std::string_view wavelet = "morlet");

/// `count` geometrically spaced scales covering [f_low, f_high] Hz.
std::vector<double> scales_for_band(double f_low, double f_high, std::size_t count, double fs,
                                    std::string_view wavelet = "morlet");

}  // namespace pcg
