#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "scpaq/frame.hpp"
#include "scpaq/masking.hpp"
#include "scpaq/parallel.hpp"
#include "scpaq/partition.hpp"
#include "scpaq/qp.hpp"

namespace scpaq {

/// Quantization model driving the per-block QPs.
///   kNone  - uniform quantization at the base QP everywhere.
///   kIdsq  - luma-only masking: the luma QP follows L, chroma stays at base.
///   kScpaq - luma and chroma masking: L drives luma, C drives Cb and Cr.
enum class Model { kNone, kIdsq, kScpaq };

inline const char* model_name(Model m) {
  switch (m) {
    case Model::kNone: return "none";
    case Model::kIdsq: return "idsq";
    case Model::kScpaq: return "scpaq";
  }
  return "?";
}

inline Model model_from_name(const std::string& name) {
  if (name == "none") return Model::kNone;
  if (name == "idsq") return Model::kIdsq;
  if (name == "scpaq") return Model::kScpaq;
  throw std::invalid_argument("unknown model '" + name + "' (expected none, idsq or scpaq)");
}

/// Per-block plane means and visibility thresholds. The thresholds are a
/// property of the content and are filled in for every model.
struct BlockStats {
  double mu_y = 0.0;
  double mu_cb = 0.0;
  double mu_cr = 0.0;
  double l_y = 1.0;
  double c_cb = 1.0;
  double c_cr = 1.0;
  int sample_count = 0;
};

/// Per-block perceptual QPs and chroma offsets. Both offset conventions are
/// kept: the literal (clamped) QP sum and the signed delta against the luma
/// QP.
struct BlockQp {
  int pqp_y = 0;
  int pqp_cb = 0;
  int pqp_cr = 0;
  int oqp_cb_literal = 0;
  int oqp_cb_delta = 0;
  int oqp_cr_literal = 0;
  int oqp_cr_delta = 0;
  double pstep_y = 0.0;
};

struct QpCell {
  BlockRect rect;
  BlockStats stats;
  BlockQp qp;
};

struct QpMap {
  int frame_index = 0;
  int block_size = 0;
  int grid_w = 0;
  int grid_h = 0;
  int base_qp = 0;
  std::vector<QpCell> cells;  // row-major

  const QpCell& cell(int bx, int by) const {
    return cells[static_cast<std::size_t>(by) * grid_w + bx];
  }
};

/// Per-block pipeline: plane means -> visibility thresholds -> perceptual QPs
/// and chroma offsets. Blocks are independent; the assembled map does not
/// depend on the worker count.
inline QpMap analyze_frame(const VideoFrame& frame, int block_size, const MaskingParams& params,
                           const QpConfig& cfg, Model model, int frame_index = 0) {
  params.validate();
  cfg.validate();
  require_supported_bit_depth(frame.bit_depth);

  const BlockGrid grid = partition(frame, block_size);
  QpMap map;
  map.frame_index = frame_index;
  map.block_size = block_size;
  map.grid_w = grid.grid_w;
  map.grid_h = grid.grid_h;
  map.base_qp = cfg.base_qp;
  map.cells.resize(grid.blocks.size());

  const double base_step = qstep_from_qp(cfg.base_qp);
  const int base_clamped = cfg.clamp(cfg.base_qp);

  parallel_for(grid.blocks.size(), [&](std::size_t i) {
    const BlockRect& r = grid.blocks[i];
    QpCell& cell = map.cells[i];
    cell.rect = r;

    BlockStats& st = cell.stats;
    st.mu_y = plane_block_mean(frame.plane_y, frame.width, r);
    st.mu_cb = plane_block_mean(frame.plane_cb, frame.width, r);
    st.mu_cr = plane_block_mean(frame.plane_cr, frame.width, r);
    st.l_y = luma_threshold(st.mu_y, frame.bit_depth, params);
    st.c_cb = chroma_threshold(st.mu_cb, frame.bit_depth, params);
    st.c_cr = chroma_threshold(st.mu_cr, frame.bit_depth, params);
    st.sample_count = r.w * r.h;

    BlockQp& q = cell.qp;
    if (model == Model::kNone) {
      q.pstep_y = base_step;
      q.pqp_y = base_clamped;
      q.pqp_cb = base_clamped;
      q.pqp_cr = base_clamped;
    } else {
      q.pstep_y = perceptual_step(base_step, st.l_y);
      q.pqp_y = cfg.clamp(qp_from_step(q.pstep_y));
      if (model == Model::kScpaq) {
        q.pqp_cb = cfg.clamp(perceptual_chroma_qp(base_step, st.c_cb));
        q.pqp_cr = cfg.clamp(perceptual_chroma_qp(base_step, st.c_cr));
      } else {
        q.pqp_cb = base_clamped;
        q.pqp_cr = base_clamped;
      }
    }
    q.oqp_cb_literal = chroma_offset(q.pqp_y, q.pqp_cb, OffsetMode::kLiteral, cfg);
    q.oqp_cb_delta = chroma_offset(q.pqp_y, q.pqp_cb, OffsetMode::kDelta, cfg);
    q.oqp_cr_literal = chroma_offset(q.pqp_y, q.pqp_cr, OffsetMode::kLiteral, cfg);
    q.oqp_cr_delta = chroma_offset(q.pqp_y, q.pqp_cr, OffsetMode::kDelta, cfg);
  });

  return map;
}

}  // namespace scpaq
