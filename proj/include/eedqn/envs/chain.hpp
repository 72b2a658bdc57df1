#pragma once

#include <vector>

#include "eedqn/envs/environment.hpp"

namespace eedqn::envs {

/// Linear corridor s0 .. s(n-1). Action 0 moves forward, action 1 moves back
/// (s0 stays put). Entering s(n-1) pays 1 and ends the episode; every other
/// move pays 0. Observation: one-hot position on a 1 x n x 1 grid.
class ChainMdp final : public Environment {
 public:
  static constexpr std::size_t kForward = 0;
  static constexpr std::size_t kBack = 1;

  explicit ChainMdp(std::size_t n_states);
  const EnvSpec& spec() const noexcept override { return spec_; }
  std::size_t position() const noexcept { return pos_; }
  Observation observation_at(std::size_t state) const;

 protected:
  void do_reset(std::uint64_t seed) override;
  std::pair<double, bool> do_step(std::size_t action) override;
  Observation observe() const override { return observation_at(pos_); }

 private:
  EnvSpec spec_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

/// Optimal action values, states x 2, rows for the terminal state are zero.
struct QTable {
  std::size_t states = 0;
  std::size_t actions = 0;
  std::vector<double> values;

  double operator()(std::size_t s, std::size_t a) const { return values[s * actions + a]; }
  double& operator()(std::size_t s, std::size_t a) { return values[s * actions + a]; }
};

/// Value iteration to a fixed point (sup-norm change below 1e-15).
/// Requires 2 <= n_states <= 50 and 0 < gamma < 1.
QTable chain_optimal_q(std::size_t n_states, double gamma);

}  // namespace eedqn::envs
