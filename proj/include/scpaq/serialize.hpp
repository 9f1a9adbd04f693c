#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "scpaq/analysis.hpp"
#include "scpaq/masking.hpp"
#include "scpaq/simulate.hpp"

namespace scpaq {

/// Fixed-precision decimal form so identical inputs always serialize to
/// identical bytes.
inline std::string format_real(double v, int significant_digits = 6) {
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, v);
  return buf;
}

namespace detail {

inline std::string json_real(double v, int significant_digits = 6) {
  if (std::isinf(v) || std::isnan(v)) {
    return "\"" + format_real(v, significant_digits) + "\"";
  }
  return format_real(v, significant_digits);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error(path + ": cannot open for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    throw std::runtime_error(path + ": write failed");
  }
}

}  // namespace detail

inline std::string qpmap_to_json(const QpMap& map) {
  std::string out;
  out.reserve(128 + map.cells.size() * 220);
  out += "{\n";
  out += "  \"frame_index\": " + std::to_string(map.frame_index) + ",\n";
  out += "  \"block_size\": " + std::to_string(map.block_size) + ",\n";
  out += "  \"grid_w\": " + std::to_string(map.grid_w) + ",\n";
  out += "  \"grid_h\": " + std::to_string(map.grid_h) + ",\n";
  out += "  \"base_qp\": " + std::to_string(map.base_qp) + ",\n";
  out += "  \"cells\": [\n";
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    const QpCell& cell = map.cells[i];
    const int bx = static_cast<int>(i) % map.grid_w;
    const int by = static_cast<int>(i) / map.grid_w;
    out += "    {\"bx\": " + std::to_string(bx);
    out += ", \"by\": " + std::to_string(by);
    out += ", \"mu_y\": " + detail::json_real(cell.stats.mu_y);
    out += ", \"mu_cb\": " + detail::json_real(cell.stats.mu_cb);
    out += ", \"mu_cr\": " + detail::json_real(cell.stats.mu_cr);
    out += ", \"l\": " + detail::json_real(cell.stats.l_y);
    out += ", \"c_cb\": " + detail::json_real(cell.stats.c_cb);
    out += ", \"c_cr\": " + detail::json_real(cell.stats.c_cr);
    out += ", \"pqp_y\": " + std::to_string(cell.qp.pqp_y);
    out += ", \"pqp_cb\": " + std::to_string(cell.qp.pqp_cb);
    out += ", \"pqp_cr\": " + std::to_string(cell.qp.pqp_cr);
    out += ", \"oqp_cb_literal\": " + std::to_string(cell.qp.oqp_cb_literal);
    out += ", \"oqp_cb_delta\": " + std::to_string(cell.qp.oqp_cb_delta);
    out += ", \"oqp_cr_literal\": " + std::to_string(cell.qp.oqp_cr_literal);
    out += ", \"oqp_cr_delta\": " + std::to_string(cell.qp.oqp_cr_delta);
    out += i + 1 < map.cells.size() ? "},\n" : "}\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

inline void write_qpmap(const QpMap& map, const std::string& path) {
  detail::write_text_file(path, qpmap_to_json(map));
}

/// Sequence form: one JSON object holding the per-frame maps.
inline std::string qpmaps_to_json(const std::vector<QpMap>& maps) {
  std::string out = "{\n  \"frames\": [\n";
  for (std::size_t i = 0; i < maps.size(); ++i) {
    std::string one = qpmap_to_json(maps[i]);
    if (!one.empty() && one.back() == '\n') one.pop_back();
    out += one;
    out += i + 1 < maps.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline void write_qpmaps(const std::vector<QpMap>& maps, const std::string& path) {
  detail::write_text_file(path, qpmaps_to_json(maps));
}

namespace detail {

inline std::string channel_stats_json(const ChannelStats& s) {
  std::string out = "{";
  out += "\"estimated_bits\": " + std::to_string(s.estimated_bits);
  out += ", \"coeff_count\": " + std::to_string(s.coeff_count);
  out += ", \"entropy_bits\": " + json_real(s.entropy_bits);
  out += ", \"psnr_db\": " + json_real(s.psnr_db);
  out += ", \"jnd_violation_fraction\": " + json_real(s.jnd_violation_fraction);
  out += ", \"max_abs_error\": " + json_real(s.max_abs_error);
  out += "}";
  return out;
}

}  // namespace detail

inline std::string report_to_json(const SimReport& report) {
  std::string out;
  out += "{\n";
  out += "  \"model\": \"" + std::string(model_name(report.model)) + "\",\n";
  out += "  \"base_qp\": " + std::to_string(report.base_qp) + ",\n";
  out += "  \"block_size\": " + std::to_string(report.block_size) + ",\n";
  out += "  \"bit_depth\": " + std::to_string(report.bit_depth) + ",\n";
  out += "  \"width\": " + std::to_string(report.width) + ",\n";
  out += "  \"height\": " + std::to_string(report.height) + ",\n";
  out += "  \"frame_count\": " + std::to_string(report.frame_count) + ",\n";
  out += "  \"rounding_offset\": " + detail::json_real(report.rounding_offset) + ",\n";
  out += "  \"channels\": {\n";
  out += "    \"y\": " + detail::channel_stats_json(report.y) + ",\n";
  out += "    \"cb\": " + detail::channel_stats_json(report.cb) + ",\n";
  out += "    \"cr\": " + detail::channel_stats_json(report.cr) + "\n";
  out += "  },\n";
  out += "  \"total_bits\": " + std::to_string(report.total_bits) + "\n";
  out += "}\n";
  return out;
}

inline void write_report(const SimReport& report, const std::string& path) {
  detail::write_text_file(path, report_to_json(report));
}

/// Threshold curve as CSV: a header row, then one row per mu value. Curve
/// values carry 12 significant digits.
inline std::string curve_to_csv(Channel component, int bit_depth, const MaskingParams& params,
                                double step) {
  params.validate();
  require_supported_bit_depth(bit_depth);
  if (!(step > 0.0)) {
    throw std::invalid_argument("curve step must be positive");
  }
  const double max_value = static_cast<double>(max_sample_value(bit_depth));
  std::string out = "mu,threshold\n";
  for (std::int64_t i = 0;; ++i) {
    const double mu = static_cast<double>(i) * step;
    if (mu > max_value) break;
    const double threshold = component == Channel::kY
                                 ? luma_threshold(mu, bit_depth, params)
                                 : chroma_threshold(mu, bit_depth, params);
    out += format_real(mu, 12);
    out += ',';
    out += format_real(threshold, 12);
    out += '\n';
  }
  return out;
}

inline void write_curve(Channel component, int bit_depth, const MaskingParams& params, double step,
                        const std::string& path) {
  detail::write_text_file(path, curve_to_csv(component, bit_depth, params, step));
}

}  // namespace scpaq
