#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pcg::detail {

using cplx = std::complex<double>;

/// Unnormalized forward DFT.
std::vector<cplx> fft(std::span<const cplx> x);
/// Inverse DFT scaled by 1/n.
std::vector<cplx> ifft(std::span<const cplx> x);
/// Forward DFT of a real sequence zero-padded (or truncated) to n points;
/// returns the n/2+1 non-negative frequency bins.
std::vector<cplx> rfft(std::span<const double> x, std::size_t n);

}  // namespace pcg::detail
