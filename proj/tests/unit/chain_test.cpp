#include <gtest/gtest.h>

#include <cmath>

#include "eedqn/envs/chain.hpp"
#include "eedqn/error.hpp"

namespace eedqn::envs {
namespace {

TEST(ChainOptimalQ, TwoStates) {
  const QTable q = chain_optimal_q(2, 0.9);
  EXPECT_DOUBLE_EQ(q(0, ChainMdp::kForward), 1.0);
  EXPECT_DOUBLE_EQ(q(0, ChainMdp::kBack), 0.9);
}

TEST(ChainOptimalQ, ThreeStatesHalfDiscount) {
  const QTable q = chain_optimal_q(3, 0.5);
  EXPECT_DOUBLE_EQ(q(0, ChainMdp::kForward), 0.5);
  EXPECT_DOUBLE_EQ(q(1, ChainMdp::kForward), 1.0);
  EXPECT_DOUBLE_EQ(q(1, ChainMdp::kBack), 0.25);
  EXPECT_DOUBLE_EQ(q(0, ChainMdp::kBack), 0.25);
  EXPECT_EQ(q(2, 0), 0.0);
  EXPECT_EQ(q(2, 1), 0.0);
}

TEST(ChainOptimalQ, ForwardValueIsGammaPower) {
  for (std::size_t n : {2u, 5u, 17u, 50u}) {
    for (double gamma : {0.3, 0.9, 0.99}) {
      const QTable q = chain_optimal_q(n, gamma);
      for (std::size_t s = 0; s + 1 < n; ++s) {
        const double expected = std::pow(gamma, static_cast<double>(n - 2 - s));
        EXPECT_NEAR(q(s, ChainMdp::kForward), expected, 1e-12);
      }
    }
  }
}

TEST(ChainOptimalQ, SatisfiesBellmanOptimality) {
  const std::size_t n = 20;
  const double gamma = 0.95;
  const QTable q = chain_optimal_q(n, gamma);
  auto v = [&](std::size_t s) {
    return s == n - 1 ? 0.0 : std::max(q(s, 0), q(s, 1));
  };
  for (std::size_t s = 0; s + 1 < n; ++s) {
    const double fwd = s + 1 == n - 1 ? 1.0 : gamma * v(s + 1);
    const double back = gamma * v(s == 0 ? 0 : s - 1);
    EXPECT_LT(std::abs(q(s, 0) - fwd), 1e-10);
    EXPECT_LT(std::abs(q(s, 1) - back), 1e-10);
  }
}

TEST(ChainOptimalQ, SmallerDiscountNeverIncreasesValues) {
  const QTable hi = chain_optimal_q(8, 0.9);
  const QTable lo = chain_optimal_q(8, 0.45);
  for (std::size_t i = 0; i < hi.values.size(); ++i) EXPECT_LE(lo.values[i], hi.values[i]);
}

TEST(ChainOptimalQ, RejectsOutOfRange) {
  EXPECT_THROW(chain_optimal_q(1, 0.9), ConfigError);
  EXPECT_THROW(chain_optimal_q(51, 0.9), ConfigError);
  EXPECT_THROW(chain_optimal_q(5, 0.0), ConfigError);
  EXPECT_THROW(chain_optimal_q(5, 1.0), ConfigError);
}

TEST(ChainMdp, Dynamics) {
  ChainMdp env(4);
  Observation obs = env.reset(123);
  EXPECT_EQ(obs, env.observation_at(0));
  StepResult r = env.step(ChainMdp::kBack);
  EXPECT_EQ(env.position(), 0u);
  EXPECT_EQ(r.reward, 0.0);
  r = env.step(ChainMdp::kForward);
  r = env.step(ChainMdp::kForward);
  EXPECT_EQ(env.position(), 2u);
  EXPECT_FALSE(r.terminal);
  r = env.step(ChainMdp::kBack);
  EXPECT_EQ(env.position(), 1u);
  env.step(ChainMdp::kForward);
  r = env.step(ChainMdp::kForward);
  EXPECT_EQ(r.reward, 1.0);
  EXPECT_TRUE(r.terminal);
  EXPECT_EQ(r.next, env.observation_at(3));
  EXPECT_THROW(env.step(ChainMdp::kForward), UsageError);
}

}  // namespace
}  // namespace eedqn::envs
