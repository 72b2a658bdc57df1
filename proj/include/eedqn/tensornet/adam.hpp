#pragma once

#include <cstdint>

#include "eedqn/tensornet/mlp.hpp"

namespace eedqn::tensornet {

struct AdamConfig {
  double learning_rate = 0.00025;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 0.0003125;
};

/// First/second moment accumulators for one network.
class AdamState {
 public:
  AdamState() = default;
  AdamState(const Topology& topology, AdamConfig config);

  const AdamConfig& config() const noexcept { return config_; }
  std::uint64_t step() const noexcept { return step_; }
  const NetParams& first_moment() const noexcept { return m_; }
  const NetParams& second_moment() const noexcept { return v_; }

  /// One bias-corrected Adam step:
  ///   m <- b1 m + (1-b1) g,  v <- b2 v + (1-b2) g^2
  ///   p <- p - lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
  void apply(NetParams& params, const NetParams& grad);

 private:
  AdamConfig config_;
  NetParams m_;
  NetParams v_;
  std::uint64_t step_ = 0;
};

inline void apply_update(NetParams& params, AdamState& state, const NetParams& grad) {
  state.apply(params, grad);
}

}  // namespace eedqn::tensornet
