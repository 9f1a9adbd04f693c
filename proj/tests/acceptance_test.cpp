// Acceptance suite: one test per release criterion, each printing its own
// pass/fail line through the test runner.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scpaq/scpaq.hpp"
#include "test_util.hpp"
#include "gtest/gtest.h"

namespace scpaq {
namespace {

using test::make_temp_dir;
using test::read_file;
using test::run_command;
using test::split_lines;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::pair<double, double>> parse_curve(const std::string& csv) {
  std::vector<std::pair<double, double>> rows;
  const auto lines = split_lines(csv);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto comma = lines[i].find(',');
    rows.emplace_back(std::stod(lines[i].substr(0, comma)), std::stod(lines[i].substr(comma + 1)));
  }
  return rows;
}

class Acceptance : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = make_temp_dir("acceptance"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

// Exported luma curves hit the analytic anchor points to 1e-9 and keep the
// same shape at 8 and 10 bits, in under a second.
TEST_F(Acceptance, CurveFidelityLuma) {
  const auto start = Clock::now();
  const MaskingParams params;

  write_curve(Channel::kY, 8, params, 1.0, path("y8.csv"));
  write_curve(Channel::kY, 10, params, 1.0, path("y10.csv"));
  const auto curve8 = parse_curve(read_file(path("y8.csv")));
  const auto curve10 = parse_curve(read_file(path("y10.csv")));
  ASSERT_EQ(curve8.size(), 256u);
  ASSERT_EQ(curve10.size(), 1024u);
  EXPECT_NEAR(curve8[0].second, 3.0, 1e-9);
  EXPECT_NEAR(curve8[128].second, 1.0, 1e-9);
  EXPECT_NEAR(curve8[255].second, 1.787548828125, 1e-9);
  EXPECT_NEAR(curve10[0].second, 3.0, 1e-9);
  EXPECT_NEAR(curve10[512].second, 1.0, 1e-9);
  EXPECT_NEAR(curve10[1023].second, 1.7968780517578125, 1e-9);

  // Shape invariance on 257 grid points covering the common normalised
  // domain of both depths: mu_8 = t*2^7 and mu_10 = t*2^9 trace one curve.
  write_curve(Channel::kY, 8, params, 255.0 / 256.0, path("t8.csv"));
  write_curve(Channel::kY, 10, params, 1020.0 / 256.0, path("t10.csv"));
  const auto grid8 = parse_curve(read_file(path("t8.csv")));
  const auto grid10 = parse_curve(read_file(path("t10.csv")));
  ASSERT_EQ(grid8.size(), 257u);
  ASSERT_EQ(grid10.size(), 257u);
  for (std::size_t i = 0; i < grid8.size(); ++i) {
    EXPECT_NEAR(grid8[i].first * 4.0, grid10[i].first, 1e-9);  // same t
    EXPECT_NEAR(grid8[i].second, grid10[i].second, 1e-12);
  }

  EXPECT_LT(seconds_since(start), 1.0);
}

// Chroma thresholds hit their endpoints, sit at exactly 1 between the
// breakpoints, and are continuous at h and j to 1e-12 for 8- and 10-bit data.
TEST_F(Acceptance, CurveFidelityChroma) {
  const MaskingParams p;
  for (int b : {8, 10}) {
    const double max = static_cast<double>(max_sample_value(b));
    EXPECT_NEAR(chroma_threshold(0.0, b, p), p.g, 1e-12) << "b=" << b;
    EXPECT_NEAR(chroma_threshold(p.h, b, p), 1.0, 1e-12) << "b=" << b;
    EXPECT_NEAR(chroma_threshold(max, b, p), p.k, 1e-12) << "b=" << b;
    for (int i = 1; i < 256; ++i) {
      const double mu = p.h + (p.j - p.h) * i / 256.0;
      ASSERT_EQ(chroma_threshold(mu, b, p), 1.0) << "b=" << b << " mu=" << mu;
    }
    // continuity across each breakpoint
    EXPECT_NEAR(chroma_threshold(std::nextafter(p.h, 0.0), b, p),
                chroma_threshold(std::nextafter(p.h, max), b, p), 1e-12);
    EXPECT_NEAR(chroma_threshold(std::nextafter(p.j, 0.0), b, p),
                chroma_threshold(std::nextafter(p.j, max), b, p), 1e-12);
    EXPECT_NEAR(chroma_threshold(std::nextafter(p.h, 0.0), b, p), 1.0, 1e-12);
    EXPECT_NEAR(chroma_threshold(std::nextafter(p.j, max), b, p), 1.0, 1e-12);
  }
}

// QP <-> QStep is an exact roundtrip over [0, 51], and doubling any step
// adds exactly 6 QP away from rounding ties.
TEST_F(Acceptance, QpRoundtrip) {
  for (int qp = 0; qp <= 51; ++qp) {
    ASSERT_EQ(qp_from_step(qstep_from_qp(qp)), qp);
  }
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> log_step(-3.0, 9.0);
  int tested = 0;
  while (tested < 100) {
    const double step = std::exp2(log_step(rng));
    const double x = 6.0 * std::log2(step);
    if (std::abs(x - std::floor(x) - 0.5) < 1e-6) continue;  // rounding tie
    ASSERT_EQ(qp_from_step(2.0 * step), qp_from_step(step) + 6) << "step=" << step;
    ++tested;
  }
}

// Block means match an independent accumulation oracle on 1000 random
// blocks, and PSNR matches a brute-force MSE oracle to 1e-9 dB.
TEST_F(Acceptance, OracleEquivalence) {
  std::mt19937 rng(1000003);
  for (int trial = 0; trial < 1000; ++trial) {
    const int bit_depth = (trial % 2 == 0) ? 8 : 10;
    std::uniform_int_distribution<int> side(1, 64);
    std::uniform_int_distribution<int> value(0, max_sample_value(bit_depth));
    const int count = side(rng) * side(rng);
    std::vector<Sample> samples(static_cast<std::size_t>(count));
    long double sum = 0.0L;
    for (auto& s : samples) {
      s = static_cast<Sample>(value(rng));
      sum += s;
    }
    ASSERT_NEAR(block_mean(samples), static_cast<double>(sum / count), 1e-9);
  }

  for (int trial = 0; trial < 40; ++trial) {
    const int bit_depth = (trial % 2 == 0) ? 8 : 10;
    std::uniform_int_distribution<int> value(0, max_sample_value(bit_depth));
    const std::size_t pixels = 80 * 45;
    std::vector<Sample> a(pixels);
    std::vector<Sample> b(pixels);
    long double sse = 0.0L;
    for (std::size_t i = 0; i < pixels; ++i) {
      a[i] = static_cast<Sample>(value(rng));
      b[i] = static_cast<Sample>(value(rng));
      const long double d = static_cast<long double>(a[i]) - static_cast<long double>(b[i]);
      sse += d * d;
    }
    const double peak = static_cast<double>(max_sample_value(bit_depth));
    const double oracle = 10.0 * std::log10(peak * peak / static_cast<double>(sse / pixels));
    ASSERT_NEAR(psnr(a, b, bit_depth), oracle, 1e-9);
  }
}

// Reconstruction error stays within max(theta, 1-theta) * QStep over 10^5
// random coefficient/step pairs for both rounding offsets.
TEST_F(Acceptance, QuantizerBound) {
  std::mt19937 rng(5050);
  std::uniform_real_distribution<double> coeff_dist(-4096.0, 4096.0);
  std::uniform_real_distribution<double> step_dist(0.01, 200.0);
  for (const double theta : {1.0 / 3.0, 0.5}) {
    const double factor = std::max(theta, 1.0 - theta);
    for (int i = 0; i < 100000; ++i) {
      const double c = coeff_dist(rng);
      const double qstep = step_dist(rng);
      const double c2 = dequantize(quantize(c, qstep, theta), qstep);
      ASSERT_LE(std::abs(c - c2), factor * qstep * (1.0 + 1e-12) + 1e-12)
          << "c=" << c << " qstep=" << qstep << " theta=" << theta;
    }
  }
}

// The worked QP maps: a constant 16 frame at base QP 22 maps every block to
// PQP_Y=28 and PQP_Cb=PQP_Cr=32; a constant 128 frame stays at 22 everywhere.
TEST_F(Acceptance, HandComputedQpMap) {
  const QpConfig cfg{22, kQpMin, kQpMax, OffsetMode::kDelta};

  const VideoFrame dark = make_flat_frame(64, 64, 8, 16, 16, 16);
  const QpMap dark_map = analyze_frame(dark, 16, MaskingParams{}, cfg, Model::kScpaq);
  ASSERT_EQ(dark_map.cells.size(), 16u);
  for (const QpCell& cell : dark_map.cells) {
    ASSERT_EQ(cell.qp.pqp_y, 28);
    ASSERT_EQ(cell.qp.pqp_cb, 32);
    ASSERT_EQ(cell.qp.pqp_cr, 32);
  }

  const VideoFrame grey = make_flat_frame(64, 64, 8, 128, 128, 128);
  const QpMap grey_map = analyze_frame(grey, 16, MaskingParams{}, cfg, Model::kScpaq);
  for (const QpCell& cell : grey_map.cells) {
    ASSERT_EQ(cell.qp.pqp_y, 22);
    ASSERT_EQ(cell.qp.pqp_cb, 22);
    ASSERT_EQ(cell.qp.pqp_cr, 22);
  }
}

// On a synthetic clip with dark and bright regions the perceptual models
// order as expected at every evaluation QP: full masking spends the fewest
// bits, luma-only masking sits between it and the uniform baseline, and the
// chroma channels give up at least as much rate as luma does. The luma path
// of the two perceptual models is shared by construction, so their Y bits
// match exactly. A 10-frame 256x256 sweep finishes inside 30 seconds.
TEST_F(Acceptance, RateReductionProperty) {
  const auto start = Clock::now();
  const std::vector<VideoFrame> clip = make_clip(TestPattern::kRegions, 10, 256, 256, 8);

  // the clip really does contain dark and bright block means in every plane
  const BlockGrid grid = partition(clip[0], 16);
  for (Channel c : {Channel::kY, Channel::kCb, Channel::kCr}) {
    bool dark = false;
    bool bright = false;
    for (const BlockRect& r : grid.blocks) {
      const double mu = plane_block_mean(clip[0].plane(c), clip[0].width, r);
      dark = dark || mu < 64.0;
      bright = bright || mu > 192.0;
    }
    ASSERT_TRUE(dark && bright) << channel_name(c);
  }

  for (const int qp : {22, 27, 32, 37}) {
    SimConfig cfg;
    cfg.base_qp = qp;
    cfg.bit_depth = 8;

    cfg.model = Model::kScpaq;
    const SimReport scpaq = simulate(clip, cfg);
    cfg.model = Model::kIdsq;
    const SimReport idsq = simulate(clip, cfg);
    cfg.model = Model::kNone;
    const SimReport none = simulate(clip, cfg);

    // chroma: strict gain over the luma-only anchor, which never exceeds the
    // baseline
    for (Channel c : {Channel::kCb, Channel::kCr}) {
      ASSERT_LT(scpaq.channel(c).estimated_bits, idsq.channel(c).estimated_bits)
          << "qp=" << qp << " " << channel_name(c);
      ASSERT_LE(idsq.channel(c).estimated_bits, none.channel(c).estimated_bits)
          << "qp=" << qp << " " << channel_name(c);
    }
    // luma: the perceptual models coincide and beat the baseline
    ASSERT_EQ(scpaq.y.estimated_bits, idsq.y.estimated_bits) << "qp=" << qp;
    ASSERT_LT(idsq.y.estimated_bits, none.y.estimated_bits) << "qp=" << qp;
    ASSERT_LT(scpaq.total_bits, idsq.total_bits) << "qp=" << qp;
    ASSERT_LT(idsq.total_bits, none.total_bits) << "qp=" << qp;

    // chroma relative reduction at least matches luma relative reduction
    const auto relative_reduction = [](const ChannelStats& model, const ChannelStats& base) {
      return (static_cast<double>(base.estimated_bits) -
              static_cast<double>(model.estimated_bits)) /
             static_cast<double>(base.estimated_bits);
    };
    const double y_reduction = relative_reduction(scpaq.y, none.y);
    ASSERT_GE(relative_reduction(scpaq.cb, none.cb), y_reduction) << "qp=" << qp;
    ASSERT_GE(relative_reduction(scpaq.cr, none.cr), y_reduction) << "qp=" << qp;
  }

  EXPECT_LT(seconds_since(start), 30.0);
}

// Two CLI simulate runs with 1 and 8 workers emit byte-identical artifacts.
TEST_F(Acceptance, Determinism) {
  const std::string clip = path("clip.yuv");
  write_yuv(make_clip(TestPattern::kRegions, 3, 128, 128, 8), {clip, 128, 128, 8, 0});

  const std::string cli = std::string("\"") + SCPAQ_CLI_BINARY + "\"";
  const std::string args = " simulate " + clip +
                           " --width 128 --height 128 --qp 22 --qp 37 --model scpaq --out ";
  const auto run1 = run_command("SCPAQ_THREADS=1 " + cli + args + path("run1"));
  ASSERT_EQ(run1.exit_code, 0) << run1.output;
  const auto run8 = run_command("SCPAQ_THREADS=8 " + cli + args + path("run8"));
  ASSERT_EQ(run8.exit_code, 0) << run8.output;

  for (const char* name : {"report_qp22.json", "report_qp37.json", "summary.txt"}) {
    const std::string a = read_file(dir_ / "run1" / name);
    const std::string b = read_file(dir_ / "run8" / name);
    ASSERT_FALSE(a.empty());
    ASSERT_EQ(a, b) << name;
  }
}

// The luma-only anchor model never moves chroma off the base QP.
TEST_F(Acceptance, IdsqAnchorEquivalence) {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 6; ++trial) {
    VideoFrame frame = trial < 2 ? make_regions_frame(96, 96, 8, trial)
                                 : make_gradient_frame(96, 96, trial % 2 == 0 ? 8 : 10, trial);
    if (trial >= 4) {
      std::uniform_int_distribution<int> value(0, max_sample_value(frame.bit_depth));
      for (Channel c : {Channel::kY, Channel::kCb, Channel::kCr}) {
        for (auto& s : frame.plane(c)) s = static_cast<Sample>(value(rng));
      }
    }
    for (const int base : {22, 27, 32, 37}) {
      const QpConfig cfg{base, kQpMin, kQpMax, OffsetMode::kDelta};
      const QpMap map = analyze_frame(frame, 16, MaskingParams{}, cfg, Model::kIdsq);
      for (const QpCell& cell : map.cells) {
        ASSERT_EQ(cell.qp.pqp_cb, base);
        ASSERT_EQ(cell.qp.pqp_cr, base);
        ASSERT_EQ(cell.qp.oqp_cb_delta, base - cell.qp.pqp_y);
        ASSERT_EQ(cell.qp.oqp_cr_delta, base - cell.qp.pqp_y);
      }
    }
  }
}

}  // namespace
}  // namespace scpaq
