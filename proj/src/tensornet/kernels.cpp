#include "eedqn/tensornet/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <string>

#include "eedqn/error.hpp"

namespace eedqn::tensornet {

Backend parse_backend(std::string_view name) {
  if (name == "serial") return Backend::serial;
  if (name == "omp") return Backend::omp;
  throw ConfigError("unknown kernel backend '" + std::string(name) + "'");
}

std::string_view to_string(Backend backend) {
  return backend == Backend::serial ? "serial" : "omp";
}

namespace kernels {
namespace {

// Below this many multiply-adds a parallel region costs more than it saves.
constexpr std::size_t kParallelWork = 1u << 16;

// Register tile of the OpenMP forward and parameter-gradient kernels.
constexpr std::size_t kRows = 4;
constexpr std::size_t kTile = 16;

inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) y[j] += alpha * x[j];
}

// The lane split and the final tree are spelled out so every caller gets
// the same rounding no matter how the compiler vectorises it.
inline double dot(const double* a, const double* b, std::size_t n) {
  constexpr std::size_t kLanes = 16;
  if (n < kLanes) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += a[j] * b[j];
    return acc;
  }
  double lane[kLanes] = {};
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) lane[l] += a[j + l] * b[j + l];
  }
  for (std::size_t width = kLanes / 2; width > 0; width /= 2) {
    for (std::size_t l = 0; l < width; ++l) lane[l] += lane[l + width];
  }
  double acc = lane[0];
  for (; j < n; ++j) acc += a[j] * b[j];
  return acc;
}

inline bool gated_off(std::span<const double> gate, std::size_t i) {
  return !gate.empty() && !(gate[i] > 0.0);
}

// Columns [j0, j1) of one output row, in input order; zero inputs are
// skipped because observations are sparse binary grids.
inline void forward_row(const double* x, const double* w, const double* bias, double* y,
                        std::size_t in, std::size_t out, std::size_t j0, std::size_t j1) {
  for (std::size_t j = j0; j < j1; ++j) y[j] = bias[j];
  for (std::size_t k = 0; k < in; ++k) {
    const double xk = x[k];
    if (xk == 0.0) continue;
    axpy(xk, w + k * out + j0, y + j0, j1 - j0);
  }
}

// kRows rows x kTile columns, one weight-row load feeding all kRows rows.
inline void forward_tile(const double* x, const double* w, const double* bias, double* y,
                         std::size_t in, std::size_t out, std::size_t j0) {
  double acc[kRows][kTile];
  for (std::size_t r = 0; r < kRows; ++r) {
    for (std::size_t j = 0; j < kTile; ++j) acc[r][j] = bias[j0 + j];
  }
  for (std::size_t k = 0; k < in; ++k) {
    const double* wk = w + k * out + j0;
    for (std::size_t r = 0; r < kRows; ++r) {
      const double xr = x[r * in + k];
      if (xr == 0.0) continue;
      for (std::size_t j = 0; j < kTile; ++j) acc[r][j] += xr * wk[j];
    }
  }
  for (std::size_t r = 0; r < kRows; ++r) {
    for (std::size_t j = 0; j < kTile; ++j) y[r * out + j0 + j] = acc[r][j];
  }
}

void forward_block(const double* x, const double* w, const double* bias, double* y,
                   std::size_t in, std::size_t out) {
  std::size_t j0 = 0;
  for (; j0 + kTile <= out; j0 += kTile) forward_tile(x, w, bias, y, in, out, j0);
  if (j0 == out) return;
  for (std::size_t r = 0; r < kRows; ++r) {
    forward_row(x + r * in, w, bias, y + r * out, in, out, j0, out);
  }
}

// Tiles pay off once inputs are dense enough that rows share weight rows;
// for sparse observation layers the row kernel skips more work.
bool prefer_tiles(std::span<const double> x, DenseShape s) {
  if (s.out < kTile || s.batch < kRows) return false;
  const auto nonzero = static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [](double v) { return v != 0.0; }));
  return nonzero * 4 >= x.size();
}

}  // namespace

namespace serial {

void dense_forward(std::span<const double> x, std::span<const double> w,
                   std::span<const double> bias, std::span<double> y, DenseShape s) {
  for (std::size_t b = 0; b < s.batch; ++b) {
    forward_row(x.data() + b * s.in, w.data(), bias.data(), y.data() + b * s.out, s.in, s.out, 0,
                s.out);
  }
}

void dense_param_grad(std::span<const double> x, std::span<const double> delta,
                      std::span<double> dw, std::span<double> dbias, DenseShape s) {
  for (std::size_t b = 0; b < s.batch; ++b) {
    const double* xb = x.data() + b * s.in;
    const double* db = delta.data() + b * s.out;
    for (std::size_t k = 0; k < s.in; ++k) {
      if (xb[k] == 0.0) continue;
      axpy(xb[k], db, dw.data() + k * s.out, s.out);
    }
    axpy(1.0, db, dbias.data(), s.out);
  }
}

void dense_input_grad(std::span<const double> w, std::span<const double> delta,
                      std::span<const double> gate, std::span<double> dx, DenseShape s) {
  for (std::size_t b = 0; b < s.batch; ++b) {
    for (std::size_t k = 0; k < s.in; ++k) {
      const std::size_t i = b * s.in + k;
      dx[i] = gated_off(gate, i) ? 0.0 : dot(w.data() + k * s.out, delta.data() + b * s.out, s.out);
    }
  }
}

void relu_inplace(std::span<double> values) {
  for (double& v : values) v = v > 0.0 ? v : 0.0;
}

}  // namespace serial

namespace omp {

void dense_forward(std::span<const double> x, std::span<const double> w,
                   std::span<const double> bias, std::span<double> y, DenseShape s) {
  const bool parallel = s.batch * s.in * s.out >= kParallelWork;
  const std::size_t blocks = prefer_tiles(x, s) ? s.batch / kRows : 0;
  const std::size_t tiled_rows = blocks * kRows;
  // Work items: the tiled row blocks first, then the leftover single rows.
  const auto items = static_cast<std::ptrdiff_t>(blocks + (s.batch - tiled_rows));
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t item = 0; item < items; ++item) {
    const auto i = static_cast<std::size_t>(item);
    if (i < blocks) {
      const std::size_t b = i * kRows;
      forward_block(x.data() + b * s.in, w.data(), bias.data(), y.data() + b * s.out, s.in, s.out);
    } else {
      const std::size_t b = tiled_rows + (i - blocks);
      forward_row(x.data() + b * s.in, w.data(), bias.data(), y.data() + b * s.out, s.in, s.out,
                  0, s.out);
    }
  }
}

void dense_param_grad(std::span<const double> x, std::span<const double> delta,
                      std::span<double> dw, std::span<double> dbias, DenseShape s) {
  const bool parallel = s.batch * s.in * s.out >= kParallelWork;
  // Each thread owns a contiguous range of weight rows k (and bias columns)
  // and walks the batch in order, so every sum keeps the serial order.
#pragma omp parallel if (parallel)
  {
    const auto threads = static_cast<std::size_t>(omp_get_num_threads());
    const auto t = static_cast<std::size_t>(omp_get_thread_num());
    const std::size_t k0 = t * s.in / threads;
    const std::size_t k1 = (t + 1) * s.in / threads;
    const std::size_t j0 = t * s.out / threads;
    const std::size_t j1 = (t + 1) * s.out / threads;
    for (std::size_t b = 0; b < s.batch; ++b) {
      const double* xb = x.data() + b * s.in;
      const double* db = delta.data() + b * s.out;
      for (std::size_t k = k0; k < k1; ++k) {
        if (xb[k] == 0.0) continue;
        axpy(xb[k], db, dw.data() + k * s.out, s.out);
      }
      axpy(1.0, db + j0, dbias.data() + j0, j1 - j0);
    }
  }
}

void dense_input_grad(std::span<const double> w, std::span<const double> delta,
                      std::span<const double> gate, std::span<double> dx, DenseShape s) {
  const auto batch = static_cast<std::ptrdiff_t>(s.batch);
  const auto in = static_cast<std::ptrdiff_t>(s.in);
#pragma omp parallel for collapse(2) schedule(static) if (s.batch * s.in * s.out >= kParallelWork)
  for (std::ptrdiff_t b = 0; b < batch; ++b) {
    for (std::ptrdiff_t k = 0; k < in; ++k) {
      const std::size_t i = b * s.in + k;
      dx[i] = gated_off(gate, i) ? 0.0
                                 : dot(w.data() + k * s.out, delta.data() + b * s.out, s.out);
    }
  }
}

void relu_inplace(std::span<double> values) {
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static) if (values.size() >= kParallelWork)
  for (std::ptrdiff_t i = 0; i < n; ++i) values[i] = values[i] > 0.0 ? values[i] : 0.0;
}

}  // namespace omp

void dense_forward(Backend backend, std::span<const double> x, std::span<const double> w,
                   std::span<const double> bias, std::span<double> y, DenseShape shape) {
  if (backend == Backend::omp) return omp::dense_forward(x, w, bias, y, shape);
  serial::dense_forward(x, w, bias, y, shape);
}

void dense_param_grad(Backend backend, std::span<const double> x,
                      std::span<const double> delta, std::span<double> dw,
                      std::span<double> dbias, DenseShape shape) {
  if (backend == Backend::omp) return omp::dense_param_grad(x, delta, dw, dbias, shape);
  serial::dense_param_grad(x, delta, dw, dbias, shape);
}

void dense_input_grad(Backend backend, std::span<const double> w,
                      std::span<const double> delta, std::span<const double> gate,
                      std::span<double> dx, DenseShape shape) {
  if (backend == Backend::omp) return omp::dense_input_grad(w, delta, gate, dx, shape);
  serial::dense_input_grad(w, delta, gate, dx, shape);
}

void relu_inplace(Backend backend, std::span<double> values) {
  if (backend == Backend::omp) return omp::relu_inplace(values);
  serial::relu_inplace(values);
}

}  // namespace kernels
}  // namespace eedqn::tensornet
