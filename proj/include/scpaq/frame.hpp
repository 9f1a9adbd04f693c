#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace scpaq {

using Sample = std::uint16_t;

enum class Channel { kY, kCb, kCr };

inline const char* channel_name(Channel c) {
  switch (c) {
    case Channel::kY: return "Y";
    case Channel::kCb: return "Cb";
    case Channel::kCr: return "Cr";
  }
  return "?";
}

inline bool is_supported_bit_depth(int bit_depth) {
  return bit_depth == 8 || bit_depth == 10 || bit_depth == 12 || bit_depth == 16;
}

inline void require_supported_bit_depth(int bit_depth) {
  if (!is_supported_bit_depth(bit_depth)) {
    throw std::invalid_argument("unsupported bit depth " + std::to_string(bit_depth) +
                                " (expected 8, 10, 12 or 16)");
  }
}

/// Largest representable sample value, 2^b - 1.
inline int max_sample_value(int bit_depth) { return (1 << bit_depth) - 1; }

/// Planar 4:4:4 frame: all three planes share one geometry, so a block covers
/// the same pixels in Y, Cb and Cr.
struct VideoFrame {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  std::vector<Sample> plane_y;
  std::vector<Sample> plane_cb;
  std::vector<Sample> plane_cr;

  VideoFrame() = default;

  VideoFrame(int w, int h, int b) : width(w), height(h), bit_depth(b) {
    if (w <= 0 || h <= 0) {
      throw std::invalid_argument("frame dimensions must be positive");
    }
    require_supported_bit_depth(b);
    const std::size_t pixels = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    plane_y.assign(pixels, 0);
    plane_cb.assign(pixels, 0);
    plane_cr.assign(pixels, 0);
  }

  std::vector<Sample>& plane(Channel c) {
    switch (c) {
      case Channel::kCb: return plane_cb;
      case Channel::kCr: return plane_cr;
      default: return plane_y;
    }
  }

  const std::vector<Sample>& plane(Channel c) const {
    switch (c) {
      case Channel::kCb: return plane_cb;
      case Channel::kCr: return plane_cr;
      default: return plane_y;
    }
  }

  Sample at(Channel c, int x, int y) const {
    return plane(c)[static_cast<std::size_t>(y) * width + x];
  }

  Sample& at(Channel c, int x, int y) {
    return plane(c)[static_cast<std::size_t>(y) * width + x];
  }

  /// Checks plane geometry and that every sample fits the bit depth.
  void validate() const {
    if (width <= 0 || height <= 0) {
      throw std::invalid_argument("frame dimensions must be positive");
    }
    require_supported_bit_depth(bit_depth);
    const std::size_t pixels = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (plane_y.size() != pixels || plane_cb.size() != pixels || plane_cr.size() != pixels) {
      throw std::invalid_argument("frame planes do not match the frame geometry");
    }
    const Sample max = static_cast<Sample>(max_sample_value(bit_depth));
    for (Channel c : {Channel::kY, Channel::kCb, Channel::kCr}) {
      const auto& p = plane(c);
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > max) {
          throw std::invalid_argument(std::string("sample value ") + std::to_string(p[i]) +
                                      " in plane " + channel_name(c) + " at offset " +
                                      std::to_string(i) + " exceeds " +
                                      std::to_string(max_sample_value(bit_depth)));
        }
      }
    }
  }
};

}  // namespace scpaq
