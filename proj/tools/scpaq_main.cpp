// scpaq: JND-based perceptual quantization toolkit for raw 4:4:4 YCbCr video.
//
// Subcommands:
//   curves    export the luma/chroma visibility threshold curves as CSV
//   generate  produce deterministic synthetic test clips (raw 4:4:4)
//   analyze   compute per-block perceptual QP maps for a clip
//   simulate  run the transform-quantize-reconstruct simulator and report
//             rate, PSNR and JND-violation statistics against a uniform
//             baseline
//   psnr      per-channel PSNR between two raw clips

#include <cinttypes>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scpaq/scpaq.hpp"

namespace {

// Command-line misuse that CLI11 validators cannot express; mapped to the
// usage-error exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

scpaq::MaskingParams parse_masking_params(const std::string& text) {
  scpaq::MaskingParams p;
  if (text.empty()) return p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--params: expected key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw UsageError("--params: cannot parse value '" + value + "' for '" + key + "'");
    }
    if (key == "a") p.a = v;
    else if (key == "c") p.c = v;
    else if (key == "d") p.d = v;
    else if (key == "f") p.f = v;
    else if (key == "g") p.g = v;
    else if (key == "h") p.h = v;
    else if (key == "j") p.j = v;
    else if (key == "k") p.k = v;
    else if (key == "scale_breakpoints" || key == "scale-breakpoints") p.scale_breakpoints = v != 0.0;
    else throw UsageError("--params: unknown parameter '" + key + "'");
  }
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw UsageError(std::string("--params: ") + e.what());
  }
  return p;
}

std::string summary_row(int qp, const char* channel, std::int64_t bits, std::int64_t baseline) {
  const double delta = 100.0 * (static_cast<double>(bits) - static_cast<double>(baseline)) /
                       static_cast<double>(baseline);
  char line[160];
  std::snprintf(line, sizeof line, "%-4d %-7s %14" PRId64 " %14" PRId64 " %10.2f\n", qp, channel,
                bits, baseline, delta);
  return line;
}

struct SharedOptions {
  std::string input;
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  int block_size = 16;
  std::vector<int> qps;
  std::string model = "scpaq";
  std::string params_text;
  std::int64_t frames = 0;
  std::string out = ".";
};

void add_geometry_flags(CLI::App* cmd, SharedOptions& opt, bool required_dims) {
  auto* w = cmd->add_option("--width", opt.width, "Frame width in pixels");
  auto* h = cmd->add_option("--height", opt.height, "Frame height in pixels");
  if (required_dims) {
    w->required();
    h->required();
  }
  cmd->add_option("--bit-depth", opt.bit_depth, "Sample bit depth")
      ->check(CLI::IsMember({8, 10, 12, 16}))
      ->capture_default_str();
}

void add_analysis_flags(CLI::App* cmd, SharedOptions& opt) {
  cmd->add_option("--block-size", opt.block_size, "Analysis block size N")
      ->check(CLI::IsMember({8, 16, 32, 64}))
      ->capture_default_str();
  cmd->add_option("--qp", opt.qps, "Base QP (repeatable; default 22 27 32 37)")
      ->check(CLI::Range(scpaq::kQpMin, scpaq::kQpMax));
  cmd->add_option("--model", opt.model, "Quantization model")
      ->check(CLI::IsMember({"none", "idsq", "scpaq"}))
      ->capture_default_str();
  cmd->add_option("--params", opt.params_text,
                  "Masking parameter overrides, e.g. a=2,c=0.8,h=85,scale_breakpoints=1");
  cmd->add_option("--frames", opt.frames, "Frames to read (0 = to end of file)")
      ->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 40));
}

std::vector<int> qps_or_default(const std::vector<int>& qps) {
  return qps.empty() ? std::vector<int>{22, 27, 32, 37} : qps;
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) {
    throw std::runtime_error(path + ": cannot create directory (" + ec.message() + ")");
  }
}

int run_curves(int bit_depth, const std::string& component, double step,
               const std::string& params_text, const std::string& out_dir) {
  const scpaq::MaskingParams params = parse_masking_params(params_text);
  ensure_directory(out_dir);
  std::vector<std::pair<scpaq::Channel, std::string>> targets;
  if (component == "all" || component == "y") targets.emplace_back(scpaq::Channel::kY, "y");
  if (component == "all" || component == "cb") targets.emplace_back(scpaq::Channel::kCb, "cb");
  if (component == "all" || component == "cr") targets.emplace_back(scpaq::Channel::kCr, "cr");
  for (const auto& [channel, name] : targets) {
    const std::string path =
        out_dir + "/curve_" + name + "_b" + std::to_string(bit_depth) + ".csv";
    scpaq::write_curve(channel, bit_depth, params, step, path);
    std::cout << path << "\n";
  }
  return 0;
}

int run_generate(const std::string& pattern_name, int frames, int width, int height, int bit_depth,
                 const std::vector<int>& values, const std::string& out_path) {
  const scpaq::TestPattern pattern = scpaq::pattern_from_name(pattern_name);
  int flat_y = 128 << (bit_depth - 8);
  int flat_cb = flat_y;
  int flat_cr = flat_y;
  if (values.size() == 1) {
    flat_y = flat_cb = flat_cr = values[0];
  } else if (values.size() == 3) {
    flat_y = values[0];
    flat_cb = values[1];
    flat_cr = values[2];
  } else if (!values.empty()) {
    throw UsageError("--value expects one value for all planes or three values (Y Cb Cr)");
  }
  const std::vector<scpaq::VideoFrame> clip =
      scpaq::make_clip(pattern, frames, width, height, bit_depth, flat_y, flat_cb, flat_cr);
  const auto parent = std::filesystem::path(out_path).parent_path();
  if (!parent.empty()) ensure_directory(parent.string());
  scpaq::RawVideoSpec spec{out_path, width, height, bit_depth, 0};
  scpaq::write_yuv(clip, spec);
  std::cout << out_path << ": " << frames << " frame(s), " << width << "x" << height << ", "
            << bit_depth << "-bit\n";
  return 0;
}

int run_analyze(const SharedOptions& opt) {
  const scpaq::MaskingParams params = parse_masking_params(opt.params_text);
  const scpaq::Model model = scpaq::model_from_name(opt.model);
  const scpaq::RawVideoSpec spec{opt.input, opt.width, opt.height, opt.bit_depth, opt.frames};
  const std::vector<scpaq::VideoFrame> frames = scpaq::read_yuv(spec);
  if (frames.empty()) {
    throw std::runtime_error(opt.input + ": no frames to analyze");
  }
  ensure_directory(opt.out);
  for (const int qp : qps_or_default(opt.qps)) {
    const scpaq::QpConfig cfg{qp, scpaq::kQpMin, scpaq::kQpMax, scpaq::OffsetMode::kDelta};
    for (std::size_t fi = 0; fi < frames.size(); ++fi) {
      const scpaq::QpMap map = scpaq::analyze_frame(frames[fi], opt.block_size, params, cfg, model,
                                                    static_cast<int>(fi));
      char name[64];
      std::snprintf(name, sizeof name, "qpmap_qp%02d_frame%04zu.json", qp, fi);
      scpaq::write_qpmap(map, opt.out + "/" + name);
    }
  }
  std::cout << "wrote " << qps_or_default(opt.qps).size() * frames.size() << " QP map(s) to "
            << opt.out << "\n";
  return 0;
}

int run_simulate(const SharedOptions& opt, double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) {
    throw UsageError("--theta must lie in [0, 1)");
  }
  const scpaq::MaskingParams params = parse_masking_params(opt.params_text);
  const scpaq::Model model = scpaq::model_from_name(opt.model);
  const scpaq::RawVideoSpec spec{opt.input, opt.width, opt.height, opt.bit_depth, opt.frames};
  const std::vector<scpaq::VideoFrame> frames = scpaq::read_yuv(spec);
  if (frames.empty()) {
    throw std::runtime_error(opt.input + ": no frames to simulate");
  }
  ensure_directory(opt.out);

  std::string summary;
  {
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-7s %14s %14s %10s\n", "qp", "channel", "bits",
                  "baseline", "delta_pct");
    summary += line;
  }
  for (const int qp : qps_or_default(opt.qps)) {
    scpaq::SimConfig cfg;
    cfg.base_qp = qp;
    cfg.block_size = opt.block_size;
    cfg.rounding_offset = theta;
    cfg.model = model;
    cfg.bit_depth = opt.bit_depth;
    const scpaq::SimReport report = scpaq::simulate(frames, cfg, params);

    scpaq::SimConfig baseline_cfg = cfg;
    baseline_cfg.model = scpaq::Model::kNone;
    const scpaq::SimReport baseline =
        model == scpaq::Model::kNone ? report : scpaq::simulate(frames, baseline_cfg, params);

    char name[64];
    std::snprintf(name, sizeof name, "report_qp%02d.json", qp);
    scpaq::write_report(report, opt.out + "/" + name);

    summary += summary_row(qp, "Y", report.y.estimated_bits, baseline.y.estimated_bits);
    summary += summary_row(qp, "Cb", report.cb.estimated_bits, baseline.cb.estimated_bits);
    summary += summary_row(qp, "Cr", report.cr.estimated_bits, baseline.cr.estimated_bits);
    summary += summary_row(qp, "total", report.total_bits, baseline.total_bits);
  }
  scpaq::detail::write_text_file(opt.out + "/summary.txt", summary);
  std::cout << summary;
  return 0;
}

int run_psnr(const std::string& reference_path, const std::string& test_path, int width, int height,
             int bit_depth, std::int64_t frame_count) {
  const scpaq::RawVideoSpec ref_spec{reference_path, width, height, bit_depth, frame_count};
  const scpaq::RawVideoSpec test_spec{test_path, width, height, bit_depth, frame_count};
  const std::vector<scpaq::VideoFrame> reference = scpaq::read_yuv(ref_spec);
  const std::vector<scpaq::VideoFrame> test = scpaq::read_yuv(test_spec);
  if (reference.size() != test.size()) {
    throw std::runtime_error("frame counts differ: " + std::to_string(reference.size()) + " vs " +
                             std::to_string(test.size()));
  }
  if (reference.empty()) {
    throw std::runtime_error("no frames to compare");
  }
  for (const scpaq::Channel channel : {scpaq::Channel::kY, scpaq::Channel::kCb, scpaq::Channel::kCr}) {
    double sse = 0.0;
    std::int64_t count = 0;
    for (std::size_t fi = 0; fi < reference.size(); ++fi) {
      const auto& a = reference[fi].plane(channel);
      const auto& b = test[fi].plane(channel);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        sse += diff * diff;
      }
      count += static_cast<std::int64_t>(a.size());
    }
    const double value = scpaq::psnr_from_mse(sse / static_cast<double>(count), bit_depth);
    if (std::isinf(value)) {
      std::printf("%s: inf\n", scpaq::channel_name(channel));
    } else {
      std::printf("%s: %.6f\n", scpaq::channel_name(channel), value);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"JND-based perceptual quantization toolkit for raw 4:4:4 YCbCr video"};
  app.require_subcommand(1);

  // curves
  int curve_depth = 8;
  std::string curve_component = "all";
  double curve_step = 1.0;
  std::string curve_params;
  std::string curve_out = ".";
  CLI::App* curves = app.add_subcommand("curves", "Export visibility threshold curves as CSV");
  curves->add_option("--bit-depth", curve_depth, "Sample bit depth")
      ->check(CLI::IsMember({8, 10, 12, 16}))
      ->capture_default_str();
  curves->add_option("--component", curve_component, "Curve component")
      ->check(CLI::IsMember({"y", "cb", "cr", "all"}))
      ->capture_default_str();
  curves->add_option("--step", curve_step, "Mean-value sampling step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  curves->add_option("--params", curve_params, "Masking parameter overrides");
  curves->add_option("--out", curve_out, "Output directory")->capture_default_str();

  // generate
  std::string gen_pattern;
  int gen_frames = 10;
  int gen_width = 256;
  int gen_height = 256;
  int gen_depth = 8;
  std::vector<int> gen_values;
  std::string gen_out;
  CLI::App* generate = app.add_subcommand("generate", "Generate a deterministic synthetic clip");
  generate->add_option("--pattern", gen_pattern, "Clip pattern")
      ->check(CLI::IsMember({"flat", "gradient", "regions"}))
      ->required();
  generate->add_option("--frames", gen_frames, "Frame count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--width", gen_width, "Frame width")->check(CLI::PositiveNumber)->capture_default_str();
  generate->add_option("--height", gen_height, "Frame height")->check(CLI::PositiveNumber)->capture_default_str();
  generate->add_option("--bit-depth", gen_depth, "Sample bit depth")
      ->check(CLI::IsMember({8, 10, 12, 16}))
      ->capture_default_str();
  generate->add_option("--value", gen_values,
                       "Flat-pattern plane value(s): one for all planes or Y Cb Cr");
  generate->add_option("--out", gen_out, "Output raw video path")->required();

  // analyze
  SharedOptions analyze_opt;
  CLI::App* analyze = app.add_subcommand("analyze", "Write per-block perceptual QP maps");
  analyze->add_option("input", analyze_opt.input, "Raw planar 4:4:4 input file")->required();
  add_geometry_flags(analyze, analyze_opt, true);
  add_analysis_flags(analyze, analyze_opt);
  analyze->add_option("--out", analyze_opt.out, "Output directory")->capture_default_str();

  // simulate
  SharedOptions sim_opt;
  double sim_theta = 0.5;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Transform-quantize-reconstruct simulation with rate/PSNR/JND reporting");
  simulate->add_option("input", sim_opt.input, "Raw planar 4:4:4 input file")->required();
  add_geometry_flags(simulate, sim_opt, true);
  add_analysis_flags(simulate, sim_opt);
  simulate->add_option("--theta", sim_theta, "Quantizer rounding offset in [0, 1)")
      ->capture_default_str();
  simulate->add_option("--out", sim_opt.out, "Output directory")->capture_default_str();

  // psnr
  std::string psnr_reference;
  std::string psnr_test;
  SharedOptions psnr_opt;
  CLI::App* psnr_cmd = app.add_subcommand("psnr", "Per-channel PSNR between two raw clips");
  psnr_cmd->add_option("reference", psnr_reference, "Reference raw file")->required();
  psnr_cmd->add_option("test", psnr_test, "Test raw file")->required();
  add_geometry_flags(psnr_cmd, psnr_opt, true);
  psnr_cmd->add_option("--frames", psnr_opt.frames, "Frames to read (0 = to end of file)")
      ->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 40));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (curves->parsed()) {
      return run_curves(curve_depth, curve_component, curve_step, curve_params, curve_out);
    }
    if (generate->parsed()) {
      return run_generate(gen_pattern, gen_frames, gen_width, gen_height, gen_depth, gen_values,
                          gen_out);
    }
    if (analyze->parsed()) {
      return run_analyze(analyze_opt);
    }
    if (simulate->parsed()) {
      return run_simulate(sim_opt, sim_theta);
    }
    if (psnr_cmd->parsed()) {
      return run_psnr(psnr_reference, psnr_test, psnr_opt.width, psnr_opt.height,
                      psnr_opt.bit_depth, psnr_opt.frames);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
