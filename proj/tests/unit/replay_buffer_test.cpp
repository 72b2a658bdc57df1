#include <gtest/gtest.h>

#include <array>
#include <random>

#include "eedqn/buffers/replay_buffer.hpp"
#include "eedqn/error.hpp"

namespace eedqn::buffers {
namespace {

Transition tagged(std::size_t tag) {
  Transition t;
  t.action = tag;
  return t;
}

TEST(ReplayBuffer, EvictsOldestFirst) {
  ReplayBuffer buf(2);
  for (std::size_t i = 0; i < 3; ++i) buf.push(tagged(i));
  ASSERT_EQ(buf.size(), 2u);
  EXPECT_EQ(buf.at(0).action, 1u);
  EXPECT_EQ(buf.at(1).action, 2u);
  buf.push(tagged(3));
  EXPECT_EQ(buf.at(0).action, 2u);
  EXPECT_EQ(buf.at(1).action, 3u);
  EXPECT_THROW(buf.at(2), UsageError);
}

TEST(ReplayBuffer, SamplesOnlyStoredItems) {
  ReplayBuffer buf(8);
  for (std::size_t i = 10; i < 15; ++i) buf.push(tagged(i));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    const auto batch = buf.sample(1, rng);
    ASSERT_EQ(batch.size(), 1u);
    EXPECT_GE(batch[0]->action, 10u);
    EXPECT_LT(batch[0]->action, 15u);
  }
}

TEST(ReplayBuffer, LengthSaturatesAtCapacity) {
  ReplayBuffer buf(1000);
  for (std::size_t i = 0; i < 100000; ++i) buf.push(tagged(i));
  EXPECT_EQ(buf.size(), buf.capacity());
  EXPECT_EQ(buf.at(0).action, 99000u);
}

TEST(ReplayBuffer, SingleItemBatchRepeats) {
  ReplayBuffer buf(4);
  buf.push(tagged(7));
  std::mt19937_64 rng(2);
  for (const Transition* t : buf.sample(32, rng)) EXPECT_EQ(t->action, 7u);
}

TEST(ReplayBuffer, SamplingIsUniform) {
  ReplayBuffer buf(10);
  for (std::size_t i = 0; i < 10; ++i) buf.push(tagged(i));
  std::mt19937_64 rng(3);
  std::array<double, 10> counts{};
  const int draws = 100000;
  for (int k = 0; k < draws / 50; ++k) {
    for (const Transition* t : buf.sample(50, rng)) counts[t->action] += 1.0;
  }
  const double expected = draws / 10.0;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 27.877);  // chi-square, 9 dof, alpha = 0.001
}

TEST(ReplayBuffer, FixedSeedGivesIdenticalBatches) {
  ReplayBuffer buf(100);
  for (std::size_t i = 0; i < 100; ++i) buf.push(tagged(i));
  std::mt19937_64 a(5), b(5);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(buf.sample(32, a), buf.sample(32, b));
}

TEST(ReplayBuffer, RejectsMisuse) {
  ReplayBuffer buf(3);
  std::mt19937_64 rng(0);
  EXPECT_THROW(buf.sample(1, rng), UsageError);
  EXPECT_THROW(ReplayBuffer(0), ConfigError);
}

}  // namespace
}  // namespace eedqn::buffers
