#include "eedqn/tensornet/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>
#include <string>

#include "eedqn/error.hpp"

namespace eedqn::tensornet {

std::size_t Topology::layer_in(std::size_t layer) const {
  return layer == 0 ? input : hidden.at(layer - 1);
}

std::size_t Topology::layer_out(std::size_t layer) const {
  return layer == hidden.size() ? output : hidden.at(layer);
}

std::size_t Topology::parameter_count() const {
  std::size_t total = 0;
  for (std::size_t l = 0; l < layer_count(); ++l) total += (layer_in(l) + 1) * layer_out(l);
  return total;
}

void Topology::validate() const {
  if (input == 0 || output == 0) throw ConfigError("topology needs non-empty input and output");
  for (std::size_t h : hidden) {
    if (h == 0) throw ConfigError("topology has a zero-width hidden layer");
  }
}

NetParams::NetParams(Topology topology) : topology_(std::move(topology)) {
  topology_.validate();
  layers_.reserve(topology_.layer_count());
  for (std::size_t l = 0; l < topology_.layer_count(); ++l) {
    DenseLayer layer;
    layer.in = topology_.layer_in(l);
    layer.out = topology_.layer_out(l);
    layer.weights.assign(layer.in * layer.out, 0.0);
    layer.bias.assign(layer.out, 0.0);
    layers_.push_back(std::move(layer));
  }
}

NetParams NetParams::zeros(const Topology& topology) { return NetParams(topology); }

NetParams NetParams::initialized(const Topology& topology, std::uint64_t seed) {
  NetParams params(topology);
  std::mt19937_64 rng(seed);
  for (DenseLayer& layer : params.layers_) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& w : layer.weights) w = dist(rng);
    for (double& b : layer.bias) b = dist(rng);
  }
  return params;
}

bool NetParams::all_finite() const {
  for (const DenseLayer& layer : layers_) {
    for (double w : layer.weights) {
      if (!std::isfinite(w)) return false;
    }
    for (double b : layer.bias) {
      if (!std::isfinite(b)) return false;
    }
  }
  return true;
}

std::uint64_t NetParams::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](std::span<const double> values) {
    for (double v : values) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &v, sizeof v);
      for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
      }
    }
  };
  for (const DenseLayer& layer : layers_) {
    feed(layer.weights);
    feed(layer.bias);
  }
  return h;
}

namespace {

void check_batch(const NetParams& params, const Matrix& obs_batch) {
  if (obs_batch.rows() == 0) throw ConfigError("forward: empty batch");
  if (obs_batch.cols() != params.topology().input) {
    std::ostringstream msg;
    msg << "forward: observation length " << obs_batch.cols() << " does not match network input "
        << params.topology().input;
    throw ConfigError(msg.str());
  }
}

// Post-activation values of every layer; activations[0] is the input.
std::vector<Matrix> forward_all(const NetParams& params, const Matrix& obs_batch,
                                Backend backend) {
  std::vector<Matrix> activations;
  activations.reserve(params.layers().size() + 1);
  activations.push_back(obs_batch);
  const std::size_t last = params.layers().size() - 1;
  for (std::size_t l = 0; l <= last; ++l) {
    const DenseLayer& layer = params.layer(l);
    Matrix out(obs_batch.rows(), layer.out);
    kernels::dense_forward(backend, activations.back().values(), layer.weights, layer.bias,
                           out.values(), {obs_batch.rows(), layer.in, layer.out});
    if (l != last) kernels::relu_inplace(backend, out.values());
    activations.push_back(std::move(out));
  }
  return activations;
}

}  // namespace

Matrix forward(const NetParams& params, const Matrix& obs_batch, Backend backend) {
  check_batch(params, obs_batch);
  Matrix x = obs_batch;
  const std::size_t last = params.layers().size() - 1;
  for (std::size_t l = 0; l <= last; ++l) {
    const DenseLayer& layer = params.layer(l);
    Matrix out(obs_batch.rows(), layer.out);
    kernels::dense_forward(backend, x.values(), layer.weights, layer.bias, out.values(),
                           {obs_batch.rows(), layer.in, layer.out});
    if (l != last) kernels::relu_inplace(backend, out.values());
    x = std::move(out);
  }
  return x;
}

GradientResult gradient(const NetParams& params, const Matrix& obs_batch,
                        std::span<const std::size_t> actions, std::span<const double> targets,
                        Backend backend) {
  check_batch(params, obs_batch);
  const std::size_t batch = obs_batch.rows();
  if (actions.size() != batch || targets.size() != batch) {
    throw ConfigError("gradient: need one action and one target per batch row");
  }
  for (std::size_t b = 0; b < batch; ++b) {
    if (!std::isfinite(targets[b])) {
      throw NumericError("gradient: non-finite target at batch row " + std::to_string(b));
    }
    if (actions[b] >= params.topology().output) {
      throw ConfigError("gradient: action index out of range at batch row " + std::to_string(b));
    }
  }

  const std::vector<Matrix> acts = forward_all(params, obs_batch, backend);
  const Matrix& q = acts.back();

  GradientResult result{NetParams::zeros(params.topology()), 0.0};
  Matrix delta(batch, q.cols());
  const double scale = 2.0 / static_cast<double>(batch);
  for (std::size_t b = 0; b < batch; ++b) {
    const double err = q(b, actions[b]) - targets[b];
    result.max_abs_prediction = std::max(result.max_abs_prediction, std::abs(q(b, actions[b])));
    result.loss += err * err;
    delta(b, actions[b]) = scale * err;
  }
  result.loss /= static_cast<double>(batch);

  for (std::size_t l = params.layers().size(); l-- > 0;) {
    const DenseLayer& layer = params.layer(l);
    DenseLayer& g = result.grad.layer(l);
    const DenseShape shape{batch, layer.in, layer.out};
    kernels::dense_param_grad(backend, acts[l].values(), delta.values(), g.weights, g.bias, shape);
    if (l == 0) break;
    Matrix prev(batch, layer.in);
    kernels::dense_input_grad(backend, layer.weights, delta.values(), acts[l].values(),
                              prev.values(), shape);
    delta = std::move(prev);
  }
  return result;
}

}  // namespace eedqn::tensornet
