#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scpaq/frame.hpp"

namespace scpaq {

/// Raw planar 4:4:4 file description. 8-bit samples are single bytes;
/// deeper samples are two little-endian bytes with the value in the low
/// bits.
struct RawVideoSpec {
  std::string path;
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  std::int64_t frame_count = 0;  // 0 = read to end of file

  void validate() const {
    if (width <= 0 || height <= 0) {
      throw std::invalid_argument("raw video spec: dimensions must be positive");
    }
    require_supported_bit_depth(bit_depth);
    if (frame_count < 0) {
      throw std::invalid_argument("raw video spec: frame count must be non-negative");
    }
  }

  int bytes_per_sample() const { return bit_depth > 8 ? 2 : 1; }

  std::int64_t plane_bytes() const {
    return static_cast<std::int64_t>(width) * height * bytes_per_sample();
  }

  std::int64_t frame_bytes() const { return 3 * plane_bytes(); }
};

namespace detail {

inline void read_plane(std::ifstream& in, const RawVideoSpec& spec, std::int64_t frame_index,
                       Channel channel, std::vector<Sample>& plane) {
  const std::size_t pixels = static_cast<std::size_t>(spec.width) * spec.height;
  const int bps = spec.bytes_per_sample();
  std::vector<unsigned char> raw(pixels * bps);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw std::runtime_error(spec.path + ": truncated frame " + std::to_string(frame_index) +
                             " while reading plane " + channel_name(channel));
  }
  const int max = max_sample_value(spec.bit_depth);
  plane.resize(pixels);
  for (std::size_t i = 0; i < pixels; ++i) {
    std::uint32_t value;
    if (bps == 1) {
      value = raw[i];
    } else {
      value = static_cast<std::uint32_t>(raw[2 * i]) |
              (static_cast<std::uint32_t>(raw[2 * i + 1]) << 8);
    }
    if (value > static_cast<std::uint32_t>(max)) {
      throw std::runtime_error(spec.path + ": frame " + std::to_string(frame_index) + ", plane " +
                               channel_name(channel) + ", sample offset " + std::to_string(i) +
                               ": value " + std::to_string(value) + " exceeds " +
                               std::to_string(max));
    }
    plane[i] = static_cast<Sample>(value);
  }
}

inline void write_plane(std::ofstream& out, const RawVideoSpec& spec,
                        const std::vector<Sample>& plane) {
  const int bps = spec.bytes_per_sample();
  std::vector<unsigned char> raw(plane.size() * bps);
  for (std::size_t i = 0; i < plane.size(); ++i) {
    if (bps == 1) {
      raw[i] = static_cast<unsigned char>(plane[i] & 0xff);
    } else {
      raw[2 * i] = static_cast<unsigned char>(plane[i] & 0xff);
      raw[2 * i + 1] = static_cast<unsigned char>(plane[i] >> 8);
    }
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

}  // namespace detail

/// Reads a raw planar 4:4:4 file, validating every sample against the bit
/// depth. Errors name the offending frame, plane and sample offset.
inline std::vector<VideoFrame> read_yuv(const RawVideoSpec& spec) {
  spec.validate();
  std::error_code ec;
  const auto file_size = std::filesystem::file_size(spec.path, ec);
  if (ec) {
    throw std::runtime_error(spec.path + ": cannot stat file (" + ec.message() + ")");
  }
  const std::int64_t size = static_cast<std::int64_t>(file_size);
  const std::int64_t per_frame = spec.frame_bytes();

  std::int64_t count;
  if (spec.frame_count == 0) {
    count = size / per_frame;
    if (size % per_frame != 0) {
      throw std::runtime_error(spec.path + ": truncated frame " + std::to_string(count) +
                               " (file size " + std::to_string(size) +
                               " is not a whole multiple of the frame size " +
                               std::to_string(per_frame) + ")");
    }
  } else {
    count = spec.frame_count;
    if (size < count * per_frame) {
      throw std::runtime_error(spec.path + ": truncated frame " + std::to_string(size / per_frame) +
                               " (requested " + std::to_string(count) + " frames)");
    }
  }

  std::ifstream in(spec.path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(spec.path + ": cannot open for reading");
  }
  std::vector<VideoFrame> frames;
  frames.reserve(static_cast<std::size_t>(count));
  for (std::int64_t fi = 0; fi < count; ++fi) {
    VideoFrame frame(spec.width, spec.height, spec.bit_depth);
    detail::read_plane(in, spec, fi, Channel::kY, frame.plane_y);
    detail::read_plane(in, spec, fi, Channel::kCb, frame.plane_cb);
    detail::read_plane(in, spec, fi, Channel::kCr, frame.plane_cr);
    frames.push_back(std::move(frame));
  }
  return frames;
}

/// Writes frames in the exact layout read_yuv consumes, so a write/read
/// roundtrip reproduces the input byte for byte.
inline void write_yuv(const std::vector<VideoFrame>& frames, const RawVideoSpec& spec) {
  spec.validate();
  for (std::size_t fi = 0; fi < frames.size(); ++fi) {
    const VideoFrame& f = frames[fi];
    if (f.width != spec.width || f.height != spec.height || f.bit_depth != spec.bit_depth) {
      throw std::invalid_argument(spec.path + ": frame " + std::to_string(fi) +
                                  " does not match the spec geometry");
    }
    f.validate();
  }
  std::ofstream out(spec.path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error(spec.path + ": cannot open for writing");
  }
  for (const VideoFrame& f : frames) {
    detail::write_plane(out, spec, f.plane_y);
    detail::write_plane(out, spec, f.plane_cb);
    detail::write_plane(out, spec, f.plane_cr);
  }
  out.flush();
  if (!out) {
    throw std::runtime_error(spec.path + ": write failed");
  }
}

}  // namespace scpaq
