#pragma once

// Fully connected Q-network: flattened observation -> ReLU hidden layers ->
// linear head with one output per action.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "eedqn/tensornet/kernels.hpp"

namespace eedqn::tensornet {

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Topology {
  std::size_t input = 0;
  std::vector<std::size_t> hidden;
  std::size_t output = 0;

  std::size_t layer_count() const noexcept { return hidden.size() + 1; }
  std::size_t layer_in(std::size_t layer) const;
  std::size_t layer_out(std::size_t layer) const;
  std::size_t parameter_count() const;
  /// Throws ConfigError on zero-sized layers.
  void validate() const;

  bool operator==(const Topology&) const = default;
};

struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;  // in x out, row-major
  std::vector<double> bias;     // out

  bool operator==(const DenseLayer&) const = default;
};

/// Parameters of one network. Also used for gradients and optimizer moments,
/// which share its shape.
class NetParams {
 public:
  NetParams() = default;

  static NetParams zeros(const Topology& topology);
  /// Uniform fan-in initialisation: every weight and bias of a layer with
  /// `in` inputs is drawn from U(-1/sqrt(in), 1/sqrt(in)).
  static NetParams initialized(const Topology& topology, std::uint64_t seed);

  const Topology& topology() const noexcept { return topology_; }
  std::span<DenseLayer> layers() noexcept { return layers_; }
  std::span<const DenseLayer> layers() const noexcept { return layers_; }
  DenseLayer& layer(std::size_t i) { return layers_.at(i); }
  const DenseLayer& layer(std::size_t i) const { return layers_.at(i); }

  bool all_finite() const;
  bool same_shape(const NetParams& other) const noexcept { return topology_ == other.topology_; }
  /// FNV-1a over the raw parameter bytes.
  std::uint64_t fingerprint() const;

  bool operator==(const NetParams&) const = default;

 private:
  explicit NetParams(Topology topology);

  Topology topology_;
  std::vector<DenseLayer> layers_;
};

/// Q-values for a batch: obs_batch is batch x input, result is batch x output.
Matrix forward(const NetParams& params, const Matrix& obs_batch, Backend backend = Backend::omp);

struct GradientResult {
  NetParams grad;
  double loss = 0.0;                // mean squared error over the batch
  double max_abs_prediction = 0.0;  // max |Q(s_b, a_b)| over the batch
};

/// Gradient of (1/B) * sum_b (Q(s_b, a_b) - y_b)^2 with respect to every
/// parameter. Only the chosen action's output receives error.
GradientResult gradient(const NetParams& params, const Matrix& obs_batch,
                        std::span<const std::size_t> actions, std::span<const double> targets,
                        Backend backend = Backend::omp);

/// Value copy used for target-network synchronisation.
inline NetParams clone_into_target(const NetParams& online) { return online; }

}  // namespace eedqn::tensornet
