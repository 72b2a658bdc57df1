// Serial reference vs OpenMP kernels at the shapes one training step uses
// (batch 32, MinAtar input 400, hidden 128). Run with --benchmark_filter to
// narrow, e.g. kernels_bench --benchmark_filter=Forward.

#include <benchmark/benchmark.h>

#include <random>

#include "eedqn/agents/ensemble.hpp"
#include "eedqn/metrics/permutation.hpp"
#include "eedqn/tensornet/adam.hpp"
#include "eedqn/tensornet/kernels.hpp"
#include "eedqn/tensornet/mlp.hpp"

namespace {

using namespace eedqn;
using tensornet::Backend;
using tensornet::DenseShape;
using tensornet::Matrix;

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double sparsity) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), coin(0.0, 1.0);
  Matrix m(rows, cols);
  for (double& v : m.values()) v = coin(rng) < sparsity ? 0.0 : u(rng);
  return m;
}

// state.range(0): backend, 1: in, 2: out, 3: input density percent
DenseShape shape_of(const benchmark::State& state) {
  return {32, static_cast<std::size_t>(state.range(1)), static_cast<std::size_t>(state.range(2))};
}
Backend backend_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Backend::serial : Backend::omp;
}
double sparsity_of(const benchmark::State& state) { return 1.0 - state.range(3) / 100.0; }

void label(benchmark::State& state) {
  state.SetLabel(std::string(tensornet::to_string(backend_of(state))));
}

void shapes(benchmark::internal::Benchmark* b) {
  b->ArgNames({"omp", "in", "out", "density"});
  for (int backend : {0, 1}) {
    b->Args({backend, 400, 128, 10});   // first layer on a sparse MinAtar frame
    b->Args({backend, 128, 128, 50});   // hidden layer after ReLU
    b->Args({backend, 128, 3, 50});     // output head
    b->Args({backend, 512, 512, 100});  // dense, large
  }
}

void BM_Forward(benchmark::State& state) {
  const DenseShape s = shape_of(state);
  const Matrix x = random_matrix(s.batch, s.in, 1, sparsity_of(state));
  const Matrix w = random_matrix(s.in, s.out, 2, 0.0);
  const Matrix bias = random_matrix(1, s.out, 3, 0.0);
  Matrix y(s.batch, s.out);
  for (auto _ : state) {
    tensornet::kernels::dense_forward(backend_of(state), x.values(), w.values(), bias.values(),
                                      y.values(), s);
    benchmark::DoNotOptimize(y.values().data());
  }
  label(state);
}
BENCHMARK(BM_Forward)->Apply(shapes);

void BM_ParamGrad(benchmark::State& state) {
  const DenseShape s = shape_of(state);
  const Matrix x = random_matrix(s.batch, s.in, 1, sparsity_of(state));
  const Matrix delta = random_matrix(s.batch, s.out, 4, 0.0);
  Matrix dw(s.in, s.out), db(1, s.out);
  for (auto _ : state) {
    tensornet::kernels::dense_param_grad(backend_of(state), x.values(), delta.values(), dw.values(),
                                         db.values(), s);
    benchmark::DoNotOptimize(dw.values().data());
  }
  label(state);
}
BENCHMARK(BM_ParamGrad)->Apply(shapes);

void BM_InputGrad(benchmark::State& state) {
  const DenseShape s = shape_of(state);
  const Matrix w = random_matrix(s.in, s.out, 2, 0.0);
  const Matrix delta = random_matrix(s.batch, s.out, 4, 0.0);
  const Matrix gate = random_matrix(s.batch, s.in, 5, sparsity_of(state));
  Matrix dx(s.batch, s.in);
  for (auto _ : state) {
    tensornet::kernels::dense_input_grad(backend_of(state), w.values(), delta.values(),
                                         gate.values(), dx.values(), s);
    benchmark::DoNotOptimize(dx.values().data());
  }
  label(state);
}
BENCHMARK(BM_InputGrad)->Apply(shapes);

// One full learn step of a two-member ensemble at the Breakout shape.
void BM_LearnStep(benchmark::State& state) {
  const Backend backend = state.range(0) == 0 ? Backend::serial : Backend::omp;
  agents::Ensemble ens({400, {128, 128}, 3}, 2, {}, 1);
  std::mt19937_64 rng(6);
  std::vector<buffers::Transition> batch;
  for (int b = 0; b < 32; ++b) {
    envs::Observation s({10, 10, 4}), e({10, 10, 4});
    for (int k = 0; k < 40; ++k) {
      s.set(rng() % 10, rng() % 10, rng() % 4);
      e.set(rng() % 10, rng() % 10, rng() % 4);
    }
    batch.push_back({s, static_cast<std::size_t>(rng() % 3), 1.0, e, rng() % 3, false});
  }
  std::vector<const buffers::Transition*> ptrs;
  for (const auto& t : batch) ptrs.push_back(&t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        agents::learn_step(ens, ptrs, {agents::AggregationKind::eedqn}, 0.99, backend));
  }
  state.SetLabel(std::string(tensornet::to_string(backend)));
}
BENCHMARK(BM_LearnStep)->ArgName("omp")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_PermutationMonteCarlo(benchmark::State& state) {
  const Backend backend = state.range(0) == 0 ? Backend::serial : Backend::omp;
  std::vector<double> a(10), b(10);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> x(0.0, 1.0);
  for (double& v : a) v = x(rng);
  for (double& v : b) v = x(rng) + 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::monte_carlo_permutation_test(a, b, 100000, 1, backend));
  }
  state.SetLabel(std::string(tensornet::to_string(backend)));
}
BENCHMARK(BM_PermutationMonteCarlo)->ArgName("omp")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
