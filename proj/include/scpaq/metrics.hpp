#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

#include "scpaq/frame.hpp"

namespace scpaq {

inline double mse(std::span<const Sample> reference, std::span<const Sample> test) {
  if (reference.size() != test.size() || reference.empty()) {
    throw std::invalid_argument("mse: plane dimensions differ or planes are empty");
  }
  std::uint64_t sse = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const std::int64_t diff = static_cast<std::int64_t>(reference[i]) - static_cast<std::int64_t>(test[i]);
    sse += static_cast<std::uint64_t>(diff * diff);
  }
  return static_cast<double>(sse) / static_cast<double>(reference.size());
}

/// 10*log10((2^b - 1)^2 / MSE), +infinity when the planes are identical.
inline double psnr_from_mse(double mse_value, int bit_depth) {
  require_supported_bit_depth(bit_depth);
  if (!(mse_value >= 0.0)) {
    throw std::invalid_argument("psnr_from_mse: MSE must be non-negative");
  }
  if (mse_value == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double peak = static_cast<double>(max_sample_value(bit_depth));
  return 10.0 * std::log10(peak * peak / mse_value);
}

inline double psnr(std::span<const Sample> reference, std::span<const Sample> test, int bit_depth) {
  return psnr_from_mse(mse(reference, test), bit_depth);
}

}  // namespace scpaq
