#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "scpaq/frame.hpp"

namespace scpaq {

inline bool is_supported_block_size(int n) {
  return n == 8 || n == 16 || n == 32 || n == 64;
}

struct BlockRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};

struct BlockGrid {
  int grid_w = 0;
  int grid_h = 0;
  int block_size = 0;
  std::vector<BlockRect> blocks;  // row-major

  const BlockRect& at(int bx, int by) const {
    return blocks[static_cast<std::size_t>(by) * grid_w + bx];
  }
};

/// Fixed tiling over the frame: ceil(width/N) x ceil(height/N) blocks, with
/// the right/bottom edge blocks shrunk to the frame bounds. Covers every
/// pixel exactly once.
inline BlockGrid partition(int width, int height, int block_size) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("partition: frame must be non-empty");
  }
  if (!is_supported_block_size(block_size)) {
    throw std::invalid_argument("partition: block size " + std::to_string(block_size) +
                                " not supported (expected 8, 16, 32 or 64)");
  }
  BlockGrid grid;
  grid.block_size = block_size;
  grid.grid_w = (width + block_size - 1) / block_size;
  grid.grid_h = (height + block_size - 1) / block_size;
  grid.blocks.reserve(static_cast<std::size_t>(grid.grid_w) * grid.grid_h);
  for (int by = 0; by < grid.grid_h; ++by) {
    for (int bx = 0; bx < grid.grid_w; ++bx) {
      BlockRect r;
      r.x = bx * block_size;
      r.y = by * block_size;
      r.w = std::min(block_size, width - r.x);
      r.h = std::min(block_size, height - r.y);
      grid.blocks.push_back(r);
    }
  }
  return grid;
}

inline BlockGrid partition(const VideoFrame& frame, int block_size) {
  return partition(frame.width, frame.height, block_size);
}

/// Mean over one plane rectangle; same arithmetic as block_mean.
inline double plane_block_mean(const std::vector<Sample>& plane, int width, const BlockRect& r) {
  const std::uint64_t count = static_cast<std::uint64_t>(r.w) * static_cast<std::uint64_t>(r.h);
  if (count == 0) {
    throw std::invalid_argument("plane_block_mean: empty block");
  }
  std::uint64_t sum = 0;
  for (int yy = r.y; yy < r.y + r.h; ++yy) {
    const Sample* row = plane.data() + static_cast<std::size_t>(yy) * width + r.x;
    for (int xx = 0; xx < r.w; ++xx) sum += row[xx];
  }
  return static_cast<double>(sum) / static_cast<double>(count);
}

}  // namespace scpaq
