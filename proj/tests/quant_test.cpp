#include "scpaq/quant.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace scpaq {
namespace {

TEST(Quantize, Examples) {
  EXPECT_EQ(quantize(25.4, 8.0, 0.5), 3);
  EXPECT_DOUBLE_EQ(dequantize(quantize(25.4, 8.0, 0.5), 8.0), 24.0);
  EXPECT_EQ(quantize(0.0, 8.0, 0.5), 0);
  EXPECT_DOUBLE_EQ(dequantize(0, 8.0), 0.0);
  EXPECT_EQ(quantize(-10.0, 4.0, 1.0 / 3.0), -2);
  EXPECT_DOUBLE_EQ(dequantize(-2, 4.0), -8.0);
}

TEST(Quantize, PreconditionErrors) {
  EXPECT_THROW(quantize(1.0, 0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(quantize(1.0, -2.0, 0.5), std::invalid_argument);
  EXPECT_THROW(quantize(1.0, 8.0, 1.0), std::invalid_argument);
  EXPECT_THROW(quantize(1.0, 8.0, -0.1), std::invalid_argument);
}

TEST(Quantize, ReconstructionErrorBound) {
  std::mt19937 rng(606);
  std::uniform_real_distribution<double> coeff_dist(-2000.0, 2000.0);
  std::uniform_real_distribution<double> step_dist(0.05, 120.0);
  for (double theta : {1.0 / 3.0, 0.5}) {
    const double bound_factor = std::max(theta, 1.0 - theta);
    for (int i = 0; i < 20000; ++i) {
      const double c = coeff_dist(rng);
      const double qstep = step_dist(rng);
      const double c2 = dequantize(quantize(c, qstep, theta), qstep);
      EXPECT_LE(std::abs(c - c2), bound_factor * qstep * (1.0 + 1e-12) + 1e-12)
          << "c=" << c << " qstep=" << qstep << " theta=" << theta;
    }
  }
}

TEST(Quantize, LevelMagnitudeNonIncreasingInQstep) {
  std::mt19937 rng(707);
  std::uniform_real_distribution<double> coeff_dist(-500.0, 500.0);
  std::uniform_real_distribution<double> step_dist(0.1, 50.0);
  for (int i = 0; i < 5000; ++i) {
    const double c = coeff_dist(rng);
    double q1 = step_dist(rng);
    double q2 = step_dist(rng);
    if (q1 > q2) std::swap(q1, q2);
    EXPECT_GE(std::llabs(quantize(c, q1, 0.5)), std::llabs(quantize(c, q2, 0.5)));
  }
}

TEST(RateEstimate, Examples) {
  const std::vector<std::int64_t> zeros(16, 0);
  EXPECT_EQ(rate_estimate(zeros), 16);
  EXPECT_EQ(egk0_signed_length(1), 3);
  EXPECT_EQ(egk0_signed_length(-1), 3);
  EXPECT_EQ(egk0_signed_length(2), 5);
  EXPECT_EQ(egk0_signed_length(-2), 5);
  EXPECT_EQ(egk0_signed_length(3), 5);
  EXPECT_EQ(egk0_signed_length(4), 7);
  const std::vector<std::int64_t> mixed{0, 1, -1, 2};
  EXPECT_EQ(rate_estimate(mixed), 1 + 3 + 3 + 5);
}

TEST(RateEstimate, LengthMonotoneInMagnitude) {
  for (std::int64_t v = 0; v < 2000; ++v) {
    EXPECT_LE(egk0_signed_length(v), egk0_signed_length(v + 1));
    EXPECT_EQ(egk0_signed_length(v), egk0_signed_length(-v));
  }
}

TEST(HistogramEntropy, KnownCases) {
  LevelHistogram hist;
  EXPECT_DOUBLE_EQ(histogram_entropy_bits(hist), 0.0);
  hist[0] = 64;
  EXPECT_DOUBLE_EQ(histogram_entropy_bits(hist), 0.0);  // single symbol
  hist[1] = 64;
  EXPECT_NEAR(histogram_entropy_bits(hist), 128.0, 1e-9);  // 1 bit/symbol
}

}  // namespace
}  // namespace scpaq
