#pragma once

#include <array>
#include <vector>

namespace pcg::detail {

/// Decomposition low-pass filters for db1..db10, index 0 is db1.
const std::array<std::vector<double>, 10>& daubechies_dec_lo();

}  // namespace pcg::detail
