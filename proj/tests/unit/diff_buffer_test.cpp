#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eedqn/buffers/diff_buffer.hpp"
#include "eedqn/error.hpp"
#include "oracles.hpp"

namespace eedqn::buffers {
namespace {

TEST(DiffBuffer, ZeroVarianceDoesNotFire) {
  DiffBuffer buf(10);
  buf.push(2.0);
  buf.push(2.0);
  const double h = push_diff_and_threshold(buf, 2.0);
  EXPECT_EQ(buf.size(), 3u);
  EXPECT_EQ(h, 2.0);
  EXPECT_FALSE(2.0 > h);
}

TEST(DiffBuffer, SpreadOutValueFires) {
  DiffBuffer buf(10);
  buf.push(0.0);
  buf.push(4.0);
  const double h = push_diff_and_threshold(buf, 8.0);
  EXPECT_NEAR(h, 4.0 + std::sqrt(32.0 / 3.0) / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(h, 5.886, 1e-3);
  EXPECT_TRUE(8.0 > h);
}

TEST(DiffBuffer, SingletonThresholdIsTheValue) {
  DiffBuffer buf(10);
  EXPECT_EQ(buf.threshold(), 0.0);
  const double h = push_diff_and_threshold(buf, 5.0);
  EXPECT_EQ(h, 5.0);
  EXPECT_EQ(buf.stddev(), 0.0);
}

TEST(DiffBuffer, SampleConvention) {
  DiffBuffer buf(10, StdConvention::sample);
  buf.push(0.0);
  buf.push(4.0);
  buf.push(8.0);
  EXPECT_NEAR(buf.stddev(), 4.0, 1e-12);
  EXPECT_NEAR(buf.threshold(), oracle::threshold(buf.contents(), false), 1e-12);
}

TEST(DiffBuffer, RejectsBadValues) {
  DiffBuffer buf(4);
  EXPECT_THROW(buf.push(std::nan("")), NumericError);
  EXPECT_THROW(buf.push(INFINITY), NumericError);
  EXPECT_THROW(buf.push(-1.0), NumericError);
  EXPECT_EQ(buf.size(), 0u);
  EXPECT_THROW(DiffBuffer(0), ConfigError);
}

TEST(DiffBuffer, ConstantStreamNeverFires) {
  for (double z : {0.0, 0.1, 3.7, 1234.5678}) {
    DiffBuffer buf(50);
    for (int i = 0; i < 1000; ++i) {
      const double h = push_diff_and_threshold(buf, z);
      ASSERT_EQ(h, z);
      ASSERT_FALSE(z > h);
    }
  }
}

TEST(DiffBuffer, ThresholdNeverBelowMean) {
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> dist(0.5);
  DiffBuffer buf(64);
  for (int i = 0; i < 5000; ++i) {
    const double h = push_diff_and_threshold(buf, dist(rng));
    ASSERT_GE(h, buf.mean());
    ASSERT_LE(buf.size(), buf.capacity());
  }
}

TEST(DiffBuffer, RunningStatsMatchRecomputation) {
  std::mt19937_64 rng(2);
  std::lognormal_distribution<double> dist(0.0, 2.0);
  DiffBuffer buf(257);
  std::vector<double> shadow;
  for (int i = 0; i < 20000; ++i) {
    const double z = (i / 3000) % 2 ? dist(rng) * 1e3 : dist(rng);
    buf.push(z);
    shadow.push_back(z);
    if (shadow.size() > 257) shadow.erase(shadow.begin());
    ASSERT_EQ(buf.contents(), shadow);
    const double expected = oracle::threshold(shadow);
    ASSERT_NEAR(buf.threshold(), expected, 1e-9 * std::max(1.0, expected)) << "op " << i;
  }
}

}  // namespace
}  // namespace eedqn::buffers
