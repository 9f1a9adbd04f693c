#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>

namespace scpaq {

/// Dead-zone scalar quantizer: level = sign(c) * floor(|c| / QStep + theta).
/// theta = 0.5 is plain rounding; smaller values widen the dead zone around
/// zero, as the HEVC intra/inter offsets 1/3 and 1/6 do.
inline std::int64_t quantize(double coeff, double qstep, double theta = 0.5) {
  if (!(qstep > 0.0)) {
    throw std::invalid_argument("quantize: QStep must be positive");
  }
  if (!(theta >= 0.0 && theta < 1.0)) {
    throw std::invalid_argument("quantize: rounding offset must lie in [0, 1)");
  }
  const double magnitude = std::floor(std::abs(coeff) / qstep + theta);
  const auto level = static_cast<std::int64_t>(magnitude);
  return coeff < 0.0 ? -level : level;
}

/// Uniform reconstruction: c' = level * QStep.
inline double dequantize(std::int64_t level, double qstep) {
  return static_cast<double>(level) * qstep;
}

/// Signed order-0 exp-Golomb code length. Levels map to unsigned codes
/// (v > 0 -> 2v-1, v <= 0 -> -2v), so a zero level costs exactly one bit and
/// the length never decreases with |v|.
inline int egk0_signed_length(std::int64_t level) {
  const std::uint64_t u = level > 0 ? static_cast<std::uint64_t>(level) * 2 - 1
                                    : static_cast<std::uint64_t>(-level) * 2;
  return 2 * (std::bit_width(u + 1) - 1) + 1;
}

/// Total proxy rate of a level sequence, in bits.
inline std::int64_t rate_estimate(std::span<const std::int64_t> levels) {
  std::int64_t bits = 0;
  for (std::int64_t v : levels) bits += egk0_signed_length(v);
  return bits;
}

using LevelHistogram = std::map<std::int64_t, std::int64_t>;

/// Shannon information content of a level histogram, in bits.
inline double histogram_entropy_bits(const LevelHistogram& hist) {
  std::int64_t total = 0;
  for (const auto& [level, count] : hist) total += count;
  if (total <= 0) return 0.0;
  double bits = 0.0;
  for (const auto& [level, count] : hist) {
    if (count <= 0) continue;
    const double p = static_cast<double>(count) / static_cast<double>(total);
    bits -= static_cast<double>(count) * std::log2(p);
  }
  return bits;
}

}  // namespace scpaq
