#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "scpaq/frame.hpp"

namespace scpaq {

/// Weights and breakpoints of the luma/chroma visibility threshold curves.
/// The luma curve is a piecewise power parabola in a, c, d, f; the chroma
/// curve is piecewise linear in g, h, j, k with h and j expressed on the
/// 8-bit sample scale.
struct MaskingParams {
  double a = 2.0;   // luma dark-side weight
  double c = 0.8;   // luma bright-side weight
  double d = 3.0;   // luma dark-side exponent
  double f = 2.0;   // luma bright-side exponent
  double g = 3.0;   // chroma low-end weight
  double h = 85.0;  // chroma lower breakpoint
  double j = 90.0;  // chroma upper breakpoint
  double k = 3.0;   // chroma high-end weight

  // When set, h and j are scaled by 2^(b-8) before evaluating at bit depth b.
  // Off by default: the literal breakpoints apply at every depth.
  bool scale_breakpoints = false;

  void validate() const {
    if (!(a > 0.0) || !(c > 0.0)) {
      throw std::invalid_argument("masking params: a and c must be positive");
    }
    if (!(g >= 1.0) || !(k >= 1.0)) {
      throw std::invalid_argument("masking params: g and k must be at least 1");
    }
    if (!(h > 0.0) || !(h < j)) {
      throw std::invalid_argument("masking params: breakpoints must satisfy 0 < h < j");
    }
  }
};

/// Arithmetic mean of raw samples. Partial blocks at frame edges divide by
/// their true sample count, not the nominal block area.
inline double block_mean(std::span<const Sample> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("block_mean: empty block");
  }
  std::uint64_t sum = 0;
  for (Sample s : samples) sum += s;
  return static_cast<double>(sum) / static_cast<double>(samples.size());
}

namespace detail {

inline void require_mean_in_range(double mu, int bit_depth, const char* where) {
  if (!(mu >= 0.0) || mu > static_cast<double>(max_sample_value(bit_depth))) {
    throw std::invalid_argument(std::string(where) + ": mean " + std::to_string(mu) +
                                " outside [0, " + std::to_string(max_sample_value(bit_depth)) +
                                "]");
  }
}

}  // namespace detail

/// Luma visibility threshold L(mu). Descends from a+1 at black to 1 at
/// mid-range, then rises toward c+1 at white; the curve keeps its shape at
/// any bit depth because mu is normalised by 2^b.
inline double luma_threshold(double mu, int bit_depth, const MaskingParams& p = {}) {
  require_supported_bit_depth(bit_depth);
  detail::require_mean_in_range(mu, bit_depth, "luma_threshold");
  const double range = static_cast<double>(1 << bit_depth);
  const double t = 2.0 * mu / range;
  if (mu <= range / 2.0) {
    return p.a * std::pow(1.0 - t, p.d) + 1.0;
  }
  return p.c * std::pow(t - 1.0, p.f) + 1.0;
}

/// Chroma visibility threshold C(mu), shared by Cb and Cr: linear descent
/// from g to 1 at h, flat 1 on (h, j), linear rise from 1 at j to k at the
/// top of the sample range.
inline double chroma_threshold(double mu, int bit_depth, const MaskingParams& p = {}) {
  require_supported_bit_depth(bit_depth);
  detail::require_mean_in_range(mu, bit_depth, "chroma_threshold");
  const double max_value = static_cast<double>(max_sample_value(bit_depth));
  double h = p.h;
  double j = p.j;
  if (p.scale_breakpoints && bit_depth > 8) {
    const double s = static_cast<double>(1 << (bit_depth - 8));
    h *= s;
    j *= s;
  }
  if (!(j < max_value)) {
    throw std::invalid_argument("chroma_threshold: breakpoint j must stay below 2^b - 1");
  }
  if (mu <= h) {
    return -mu * (p.g - 1.0) / h + p.g;
  }
  if (mu < j) {
    return 1.0;
  }
  return (mu - j) * (p.k - 1.0) / (max_value - j) + 1.0;
}

}  // namespace scpaq
