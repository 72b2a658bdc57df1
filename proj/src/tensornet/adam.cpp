#include "eedqn/tensornet/adam.hpp"

#include <cmath>

#include "eedqn/error.hpp"

namespace eedqn::tensornet {

AdamState::AdamState(const Topology& topology, AdamConfig config)
    : config_(config), m_(NetParams::zeros(topology)), v_(NetParams::zeros(topology)) {
  if (!(config.learning_rate > 0.0) || !(config.epsilon > 0.0) || config.beta1 < 0.0 ||
      config.beta1 >= 1.0 || config.beta2 < 0.0 || config.beta2 >= 1.0) {
    throw ConfigError("adam: learning rate and epsilon must be positive, betas in [0, 1)");
  }
}

void AdamState::apply(NetParams& params, const NetParams& grad) {
  if (!params.same_shape(grad) || !params.same_shape(m_)) {
    throw ConfigError("adam: parameter, gradient and moment shapes differ");
  }
  ++step_;
  const double t = static_cast<double>(step_);
  const double c1 = 1.0 - std::pow(config_.beta1, t);
  const double c2 = 1.0 - std::pow(config_.beta2, t);
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double lr = config_.learning_rate;
  const double eps = config_.epsilon;
  // lr * (m / c1) / (sqrt(v / c2) + eps), with the corrections hoisted.
  const double step_size = lr / c1;
  const double inv_sqrt_c2 = 1.0 / std::sqrt(c2);

  auto update = [=](std::vector<double>& pv, const std::vector<double>& gv,
                    std::vector<double>& mv, std::vector<double>& vv) {
    double* __restrict p = pv.data();
    const double* __restrict g = gv.data();
    double* __restrict m = mv.data();
    double* __restrict v = vv.data();
    const std::size_t n = pv.size();
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = b1 * m[i] + (1.0 - b1) * g[i];
      v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
      p[i] -= step_size * m[i] / (std::sqrt(v[i]) * inv_sqrt_c2 + eps);
    }
  };
  for (std::size_t l = 0; l < params.layers().size(); ++l) {
    update(params.layer(l).weights, grad.layer(l).weights, m_.layer(l).weights,
           v_.layer(l).weights);
    update(params.layer(l).bias, grad.layer(l).bias, m_.layer(l).bias, v_.layer(l).bias);
  }
}

}  // namespace eedqn::tensornet
