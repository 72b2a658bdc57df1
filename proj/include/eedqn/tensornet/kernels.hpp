#pragma once

// Dense-layer kernels. Every kernel exists twice: a plain serial reference
// and an OpenMP version that is register-tiled and parallelised over
// independent outputs. Both accumulate each output element in the same
// order, so their results are bit-identical; tests hold them to that.
//
// Layout: a dense layer with `in` inputs and `out` outputs stores its weights
// as an in x out row-major matrix, so output row b is
//   y[b, :] = bias + sum_k x[b, k] * w[k, :]
// which vectorises along `out` without reassociating any sum.

#include <cstddef>
#include <span>
#include <string_view>

namespace eedqn::tensornet {

enum class Backend { serial, omp };

Backend parse_backend(std::string_view name);
std::string_view to_string(Backend backend);

struct DenseShape {
  std::size_t batch = 0;
  std::size_t in = 0;
  std::size_t out = 0;
};

namespace kernels {

namespace serial {

/// y[b, :] = bias + x[b, :] * w
void dense_forward(std::span<const double> x, std::span<const double> w,
                   std::span<const double> bias, std::span<double> y, DenseShape shape);

/// dw += x^T * delta, dbias += column sums of delta.
void dense_param_grad(std::span<const double> x, std::span<const double> delta,
                      std::span<double> dw, std::span<double> dbias, DenseShape shape);

/// dx[b, k] = sum_j w[k, j] * delta[b, j], or 0 where gate[b, k] <= 0.
/// An empty gate passes everything (use the layer's ReLU output as gate).
void dense_input_grad(std::span<const double> w, std::span<const double> delta,
                      std::span<const double> gate, std::span<double> dx, DenseShape shape);

void relu_inplace(std::span<double> values);

}  // namespace serial

namespace omp {

void dense_forward(std::span<const double> x, std::span<const double> w,
                   std::span<const double> bias, std::span<double> y, DenseShape shape);
void dense_param_grad(std::span<const double> x, std::span<const double> delta,
                      std::span<double> dw, std::span<double> dbias, DenseShape shape);
void dense_input_grad(std::span<const double> w, std::span<const double> delta,
                      std::span<const double> gate, std::span<double> dx, DenseShape shape);
void relu_inplace(std::span<double> values);

}  // namespace omp

// Backend dispatch.
void dense_forward(Backend backend, std::span<const double> x, std::span<const double> w,
                   std::span<const double> bias, std::span<double> y, DenseShape shape);
void dense_param_grad(Backend backend, std::span<const double> x,
                      std::span<const double> delta, std::span<double> dw,
                      std::span<double> dbias, DenseShape shape);
void dense_input_grad(Backend backend, std::span<const double> w,
                      std::span<const double> delta, std::span<const double> gate,
                      std::span<double> dx, DenseShape shape);
void relu_inplace(Backend backend, std::span<double> values);

}  // namespace kernels
}  // namespace eedqn::tensornet
