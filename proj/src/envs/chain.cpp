#include "eedqn/envs/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eedqn/error.hpp"

namespace eedqn::envs {

ChainMdp::ChainMdp(std::size_t n_states)
    : spec_{"chain:" + std::to_string(n_states), 2, {1, n_states, 1}, 1.0}, n_(n_states) {
  if (n_states < 2 || n_states > 50) throw ConfigError("chain length must be in [2, 50]");
}

Observation ChainMdp::observation_at(std::size_t state) const {
  Observation obs(spec_.shape);
  obs.set(0, state, 0);
  return obs;
}

void ChainMdp::do_reset(std::uint64_t) { pos_ = 0; }

std::pair<double, bool> ChainMdp::do_step(std::size_t action) {
  if (action == kForward) {
    ++pos_;
    if (pos_ == n_ - 1) return {1.0, true};
    return {0.0, false};
  }
  if (pos_ > 0) --pos_;
  return {0.0, false};
}

QTable chain_optimal_q(std::size_t n_states, double gamma) {
  if (n_states < 2 || n_states > 50) throw ConfigError("chain length must be in [2, 50]");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must be in (0, 1)");

  QTable q{n_states, 2, std::vector<double>(n_states * 2, 0.0)};
  auto value = [&](std::size_t s) {
    return s == n_states - 1 ? 0.0 : std::max(q(s, ChainMdp::kForward), q(s, ChainMdp::kBack));
  };
  for (int iter = 0; iter < 1'000'000; ++iter) {
    double change = 0.0;
    for (std::size_t s = 0; s + 1 < n_states; ++s) {
      const double fwd = s + 1 == n_states - 1 ? 1.0 : gamma * value(s + 1);
      const double back = gamma * value(s == 0 ? 0 : s - 1);
      change = std::max({change, std::abs(fwd - q(s, ChainMdp::kForward)),
                         std::abs(back - q(s, ChainMdp::kBack))});
      q(s, ChainMdp::kForward) = fwd;
      q(s, ChainMdp::kBack) = back;
    }
    if (change < 1e-15) break;
  }
  return q;
}

}  // namespace eedqn::envs
