#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace scpaq {

inline constexpr int kQpMin = 0;
inline constexpr int kQpMax = 51;

/// How a chroma QP offset is expressed. Literal keeps the raw QP sum,
/// clamped to the QP range; delta keeps the signed difference a decoder adds
/// back to the luma QP to recover the chroma QP.
enum class OffsetMode { kLiteral, kDelta };

struct QpConfig {
  int base_qp = 22;
  int qp_min = kQpMin;
  int qp_max = kQpMax;
  OffsetMode offset_mode = OffsetMode::kDelta;

  void validate() const {
    if (qp_min < kQpMin || qp_max > kQpMax || qp_min > qp_max) {
      throw std::invalid_argument("qp config: clamp range must lie inside [0, 51]");
    }
    if (base_qp < qp_min || base_qp > qp_max) {
      throw std::invalid_argument("qp config: base QP " + std::to_string(base_qp) +
                                  " outside [" + std::to_string(qp_min) + ", " +
                                  std::to_string(qp_max) + "]");
    }
  }

  int clamp(int qp) const { return qp < qp_min ? qp_min : (qp > qp_max ? qp_max : qp); }
};

/// Nearest integer, halves rounding away from zero.
inline long long round_half_away(double x) {
  return x >= 0.0 ? static_cast<long long>(std::floor(x + 0.5))
                  : -static_cast<long long>(std::floor(-x + 0.5));
}

/// QStep = 2^((QP - 4) / 6): strictly increasing, doubles every 6 QP.
inline double qstep_from_qp(int qp) {
  if (qp < kQpMin || qp > kQpMax) {
    throw std::invalid_argument("qstep_from_qp: QP " + std::to_string(qp) +
                                " outside [0, 51]");
  }
  return std::exp2((qp - 4) / 6.0);
}

/// Perceptual step: the base step stretched by the rounded visibility
/// threshold. Thresholds round to at least 1, so the result never shrinks
/// the step.
inline double perceptual_step(double qstep, double threshold) {
  if (!(qstep > 0.0)) {
    throw std::invalid_argument("perceptual_step: QStep must be positive");
  }
  if (!(threshold >= 1.0)) {
    throw std::invalid_argument("perceptual_step: threshold must be at least 1");
  }
  return qstep * static_cast<double>(round_half_away(threshold));
}

/// Inverse step mapping: nearest integer of 6*log2(step), plus 4. Returns the
/// raw value; clamp through QpConfig::clamp where a bounded QP is needed.
inline int qp_from_step(double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("qp_from_step: step must be positive");
  }
  return static_cast<int>(round_half_away(6.0 * std::log2(step))) + 4;
}

/// Chroma QP after threshold stretching; unclamped like qp_from_step.
inline int perceptual_chroma_qp(double qstep_c, double threshold_c) {
  return qp_from_step(perceptual_step(qstep_c, threshold_c));
}

/// Chroma QP offset against the luma QP. Delta mode is left unclamped so
/// that pqp_y + offset always reconstructs pqp_c.
inline int chroma_offset(int pqp_y, int pqp_c, OffsetMode mode, const QpConfig& cfg = {}) {
  if (mode == OffsetMode::kLiteral) {
    return cfg.clamp(pqp_y + pqp_c);
  }
  return pqp_c - pqp_y;
}

}  // namespace scpaq
