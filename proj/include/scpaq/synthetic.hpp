#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "scpaq/frame.hpp"

namespace scpaq {

/// Deterministic test clip generators. Values below are on the 8-bit scale
/// and get shifted up for deeper frames, so the same scene renders at any
/// supported bit depth.
enum class TestPattern { kFlat, kGradient, kRegions };

inline TestPattern pattern_from_name(const std::string& name) {
  if (name == "flat") return TestPattern::kFlat;
  if (name == "gradient") return TestPattern::kGradient;
  if (name == "regions") return TestPattern::kRegions;
  throw std::invalid_argument("unknown pattern '" + name +
                              "' (expected flat, gradient or regions)");
}

namespace detail {

inline std::uint32_t mix32(std::uint32_t v) {
  v ^= v >> 16;
  v *= 0x7feb352dU;
  v ^= v >> 15;
  v *= 0x846ca68bU;
  v ^= v >> 16;
  return v;
}

// Small pseudo-random texture in [-3, 4], a pure function of position so
// clips are identical across runs and platforms.
inline int texture_offset(int x, int y, int frame_index, int channel) {
  const std::uint32_t key = static_cast<std::uint32_t>(x) * 0x9E3779B9U ^
                            static_cast<std::uint32_t>(y) * 0x85EBCA6BU ^
                            static_cast<std::uint32_t>(frame_index) * 0xC2B2AE35U ^
                            static_cast<std::uint32_t>(channel + 1) * 0x27D4EB2FU;
  return static_cast<int>(mix32(key) & 7U) - 3;
}

inline Sample clamp_sample(int value, int bit_depth) {
  return static_cast<Sample>(std::clamp(value, 0, max_sample_value(bit_depth)));
}

}  // namespace detail

inline VideoFrame make_flat_frame(int width, int height, int bit_depth, int value_y, int value_cb,
                                  int value_cr) {
  VideoFrame frame(width, height, bit_depth);
  const int max = max_sample_value(bit_depth);
  for (int v : {value_y, value_cb, value_cr}) {
    if (v < 0 || v > max) {
      throw std::invalid_argument("flat value " + std::to_string(v) + " outside [0, " +
                                  std::to_string(max) + "]");
    }
  }
  std::fill(frame.plane_y.begin(), frame.plane_y.end(), static_cast<Sample>(value_y));
  std::fill(frame.plane_cb.begin(), frame.plane_cb.end(), static_cast<Sample>(value_cb));
  std::fill(frame.plane_cr.begin(), frame.plane_cr.end(), static_cast<Sample>(value_cr));
  return frame;
}

/// Full-range ramps: horizontal in Y, vertical in Cb, diagonal in Cr, all
/// scrolling with the frame index.
inline VideoFrame make_gradient_frame(int width, int height, int bit_depth, int frame_index) {
  VideoFrame frame(width, height, bit_depth);
  const int max = max_sample_value(bit_depth);
  const int wd = std::max(width - 1, 1);
  const int hd = std::max(height - 1, 1);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * width + x;
      const int xs = (x + 4 * frame_index) % width;
      const int ys = (y + 4 * frame_index) % height;
      frame.plane_y[idx] = static_cast<Sample>(static_cast<std::int64_t>(xs) * max / wd);
      frame.plane_cb[idx] = static_cast<Sample>(static_cast<std::int64_t>(ys) * max / hd);
      frame.plane_cr[idx] =
          static_cast<Sample>(static_cast<std::int64_t>(xs + ys) * max / (wd + hd));
    }
  }
  return frame;
}

/// Tiled scene mixing dark (< 64), mid and bright (> 192) regions in every
/// plane, with a little deterministic texture for AC energy. Tiles are
/// 32 x 32, so analysis blocks of 8/16/32 nest inside a single region.
inline VideoFrame make_regions_frame(int width, int height, int bit_depth, int frame_index) {
  static constexpr std::array<int, 8> kBaseY = {16, 240, 128, 48, 232, 112, 24, 200};
  static constexpr std::array<int, 8> kBaseCb = {16, 224, 48, 200, 32, 128, 240, 60};
  static constexpr std::array<int, 8> kBaseCr = {224, 32, 208, 44, 240, 120, 16, 52};
  constexpr int kTile = 32;

  VideoFrame frame(width, height, bit_depth);
  const int shift = bit_depth - 8;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * width + x;
      const int tile = (x / kTile + 2 * (y / kTile) + frame_index) % static_cast<int>(kBaseY.size());
      frame.plane_y[idx] = detail::clamp_sample(
          (kBaseY[tile] + detail::texture_offset(x, y, frame_index, 0)) << shift, bit_depth);
      frame.plane_cb[idx] = detail::clamp_sample(
          (kBaseCb[tile] + detail::texture_offset(x, y, frame_index, 1)) << shift, bit_depth);
      frame.plane_cr[idx] = detail::clamp_sample(
          (kBaseCr[tile] + detail::texture_offset(x, y, frame_index, 2)) << shift, bit_depth);
    }
  }
  return frame;
}

inline std::vector<VideoFrame> make_clip(TestPattern pattern, int frames, int width, int height,
                                         int bit_depth, int flat_y = 128, int flat_cb = 128,
                                         int flat_cr = 128) {
  if (frames <= 0) {
    throw std::invalid_argument("clip must have at least one frame");
  }
  std::vector<VideoFrame> clip;
  clip.reserve(static_cast<std::size_t>(frames));
  for (int fi = 0; fi < frames; ++fi) {
    switch (pattern) {
      case TestPattern::kFlat:
        clip.push_back(make_flat_frame(width, height, bit_depth, flat_y, flat_cb, flat_cr));
        break;
      case TestPattern::kGradient:
        clip.push_back(make_gradient_frame(width, height, bit_depth, fi));
        break;
      case TestPattern::kRegions:
        clip.push_back(make_regions_frame(width, height, bit_depth, fi));
        break;
    }
  }
  return clip;
}

}  // namespace scpaq
