#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "scpaq/analysis.hpp"
#include "scpaq/dct.hpp"
#include "scpaq/frame.hpp"
#include "scpaq/metrics.hpp"
#include "scpaq/parallel.hpp"
#include "scpaq/quant.hpp"

namespace scpaq {

struct SimConfig {
  int base_qp = 22;
  int block_size = 16;
  double rounding_offset = 0.5;  // URQ dead-zone offset theta in [0, 1)
  Model model = Model::kScpaq;
  int bit_depth = 8;

  // Test hook: reconstruct from the unquantized coefficients while still
  // counting the quantized levels, so the transform path can be exercised
  // with zero quantization distortion.
  bool bypass_quantization = false;

  void validate() const {
    if (base_qp < kQpMin || base_qp > kQpMax) {
      throw std::invalid_argument("sim config: base QP outside [0, 51]");
    }
    if (!is_supported_block_size(block_size)) {
      throw std::invalid_argument("sim config: block size not supported");
    }
    if (!(rounding_offset >= 0.0 && rounding_offset < 1.0)) {
      throw std::invalid_argument("sim config: rounding offset must lie in [0, 1)");
    }
    require_supported_bit_depth(bit_depth);
  }
};

/// Aggregated reconstruction statistics for one channel.
struct ChannelStats {
  std::int64_t estimated_bits = 0;
  std::int64_t coeff_count = 0;
  double entropy_bits = 0.0;
  double psnr_db = std::numeric_limits<double>::infinity();
  double jnd_violation_fraction = 0.0;
  double max_abs_error = 0.0;
};

struct SimReport {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  int block_size = 16;
  int base_qp = 22;
  Model model = Model::kScpaq;
  double rounding_offset = 0.5;
  int frame_count = 0;
  ChannelStats y;
  ChannelStats cb;
  ChannelStats cr;
  std::int64_t total_bits = 0;
  std::vector<QpMap> qp_maps;  // one per frame

  const ChannelStats& channel(Channel c) const {
    switch (c) {
      case Channel::kCb: return cb;
      case Channel::kCr: return cr;
      default: return y;
    }
  }
};

/// Transform-quantize-reconstruct pipeline over a clip. Per block and
/// channel: zero-pad partial blocks to N x N, forward DCT, quantize at the
/// block's effective QStep (the base step for model none, otherwise the step
/// of the block's perceptual QP), dequantize, inverse DCT, crop, clip to the
/// sample range. Reconstruction errors are compared against the block's
/// visibility thresholds (L for Y, C for Cb/Cr).
///
/// Blocks run in parallel; per-block partial sums are reduced in block order,
/// so the report is bit-identical for any worker count.
inline SimReport simulate(std::span<const VideoFrame> frames, const SimConfig& cfg,
                          const MaskingParams& params = {}) {
  cfg.validate();
  params.validate();
  if (frames.empty()) {
    throw std::invalid_argument("simulate: no frames");
  }
  const VideoFrame& first = frames[0];
  for (const VideoFrame& f : frames) {
    if (f.width != first.width || f.height != first.height || f.bit_depth != first.bit_depth) {
      throw std::invalid_argument("simulate: frames must share dimensions and bit depth");
    }
  }
  if (first.bit_depth != cfg.bit_depth) {
    throw std::invalid_argument("simulate: config bit depth does not match the frames");
  }

  const int n = cfg.block_size;
  const std::size_t area = static_cast<std::size_t>(n) * n;
  const Dct2 dct(n);
  const double max_value = static_cast<double>(max_sample_value(cfg.bit_depth));
  const QpConfig qp_cfg{cfg.base_qp, kQpMin, kQpMax, OffsetMode::kDelta};

  struct BlockAccum {
    std::array<std::int64_t, 3> bits{};
    std::array<std::int64_t, 3> coeffs{};
    std::array<double, 3> sse{};
    std::array<double, 3> max_err{};
    std::array<std::int64_t, 3> violations{};
    std::array<std::int64_t, 3> samples{};
    std::array<LevelHistogram, 3> hist;
  };

  SimReport report;
  report.width = first.width;
  report.height = first.height;
  report.bit_depth = cfg.bit_depth;
  report.block_size = n;
  report.base_qp = cfg.base_qp;
  report.model = cfg.model;
  report.rounding_offset = cfg.rounding_offset;
  report.frame_count = static_cast<int>(frames.size());

  std::array<std::int64_t, 3> bits{};
  std::array<std::int64_t, 3> coeffs{};
  std::array<double, 3> sse{};
  std::array<double, 3> max_err{};
  std::array<std::int64_t, 3> violations{};
  std::array<std::int64_t, 3> samples{};
  std::array<LevelHistogram, 3> hist;

  for (std::size_t fi = 0; fi < frames.size(); ++fi) {
    const VideoFrame& frame = frames[fi];
    QpMap map = analyze_frame(frame, n, params, qp_cfg, cfg.model, static_cast<int>(fi));
    std::vector<BlockAccum> accums(map.cells.size());

    parallel_for(map.cells.size(), [&](std::size_t bi) {
      const QpCell& cell = map.cells[bi];
      BlockAccum& acc = accums[bi];
      std::vector<double> block(area);
      std::vector<double> coeff(area);
      std::vector<double> recon(area);

      for (int ch = 0; ch < 3; ++ch) {
        const Channel channel = static_cast<Channel>(ch);
        const std::vector<Sample>& plane = frame.plane(channel);
        std::fill(block.begin(), block.end(), 0.0);
        for (int yy = 0; yy < cell.rect.h; ++yy) {
          const Sample* row =
              plane.data() + static_cast<std::size_t>(cell.rect.y + yy) * frame.width + cell.rect.x;
          for (int xx = 0; xx < cell.rect.w; ++xx) {
            block[static_cast<std::size_t>(yy) * n + xx] = static_cast<double>(row[xx]);
          }
        }
        dct.forward(block, coeff);

        const int qp = ch == 0 ? cell.qp.pqp_y : (ch == 1 ? cell.qp.pqp_cb : cell.qp.pqp_cr);
        const double qstep = qstep_from_qp(qp);
        for (std::size_t i = 0; i < area; ++i) {
          const std::int64_t level = quantize(coeff[i], qstep, cfg.rounding_offset);
          acc.bits[ch] += egk0_signed_length(level);
          ++acc.hist[ch][level];
          ++acc.coeffs[ch];
          if (!cfg.bypass_quantization) {
            coeff[i] = dequantize(level, qstep);
          }
        }
        dct.inverse(coeff, recon);

        const double threshold =
            ch == 0 ? cell.stats.l_y : (ch == 1 ? cell.stats.c_cb : cell.stats.c_cr);
        for (int yy = 0; yy < cell.rect.h; ++yy) {
          const Sample* row =
              plane.data() + static_cast<std::size_t>(cell.rect.y + yy) * frame.width + cell.rect.x;
          for (int xx = 0; xx < cell.rect.w; ++xx) {
            const double reconstructed =
                std::clamp(recon[static_cast<std::size_t>(yy) * n + xx], 0.0, max_value);
            const double q = reconstructed - static_cast<double>(row[xx]);
            const double abs_q = std::abs(q);
            acc.sse[ch] += q * q;
            acc.max_err[ch] = std::max(acc.max_err[ch], abs_q);
            if (abs_q > threshold) ++acc.violations[ch];
            ++acc.samples[ch];
          }
        }
      }
    });

    // Deterministic reduction in block order.
    for (const BlockAccum& acc : accums) {
      for (int ch = 0; ch < 3; ++ch) {
        bits[ch] += acc.bits[ch];
        coeffs[ch] += acc.coeffs[ch];
        sse[ch] += acc.sse[ch];
        max_err[ch] = std::max(max_err[ch], acc.max_err[ch]);
        violations[ch] += acc.violations[ch];
        samples[ch] += acc.samples[ch];
        for (const auto& [level, count] : acc.hist[ch]) hist[ch][level] += count;
      }
    }
    report.qp_maps.push_back(std::move(map));
  }

  ChannelStats* stats[3] = {&report.y, &report.cb, &report.cr};
  for (int ch = 0; ch < 3; ++ch) {
    ChannelStats& s = *stats[ch];
    s.estimated_bits = bits[ch];
    s.coeff_count = coeffs[ch];
    s.entropy_bits = histogram_entropy_bits(hist[ch]);
    const double mse_value = sse[ch] / static_cast<double>(samples[ch]);
    s.psnr_db = mse_value == 0.0 ? std::numeric_limits<double>::infinity()
                                 : 10.0 * std::log10(max_value * max_value / mse_value);
    s.jnd_violation_fraction =
        static_cast<double>(violations[ch]) / static_cast<double>(samples[ch]);
    s.max_abs_error = max_err[ch];
  }
  report.total_bits = report.y.estimated_bits + report.cb.estimated_bits + report.cr.estimated_bits;
  return report;
}

inline SimReport simulate(const std::vector<VideoFrame>& frames, const SimConfig& cfg,
                          const MaskingParams& params = {}) {
  return simulate(std::span<const VideoFrame>(frames.data(), frames.size()), cfg, params);
}

}  // namespace scpaq
