#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gaugepf::detail {

/// Opens a gap at bit `pos` of `x` and fills it with `bit`.
inline std::size_t insert_bit(std::size_t x, std::size_t pos, std::size_t bit) {
  const std::size_t low = x & ((std::size_t{1} << pos) - 1);
  const std::size_t high = x >> pos;
  return low | (bit << pos) | (high << (pos + 1));
}

/// w[s] = prod_{i in s} x[i] for every subset s of the variables.
inline std::vector<double> monomial_weights(std::span<const double> x) {
  std::vector<double> w(std::size_t{1} << x.size());
  w[0] = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t half = std::size_t{1} << i;
    for (std::size_t s = 0; s < half; ++s) w[s | half] = w[s] * x[i];
  }
  return w;
}

}  // namespace gaugepf::detail
