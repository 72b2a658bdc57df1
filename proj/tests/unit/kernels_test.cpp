#include <gtest/gtest.h>
#include <omp.h>

#include <cstring>
#include <random>

#include "eedqn/tensornet/kernels.hpp"
#include "eedqn/tensornet/mlp.hpp"
#include "test_util.hpp"

namespace eedqn::tensornet {
namespace {

bool same_bits(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Case {
  DenseShape shape;
  double sparsity;
};

// Shapes on both sides of the parallel threshold, with tile remainders and
// sparse inputs that exercise the zero-skipping paths.
const Case kCases[] = {
    {{1, 7, 3}, 0.0},     {{4, 16, 16}, 0.0},  {{5, 33, 17}, 0.5},  {{32, 400, 128}, 0.9},
    {{32, 128, 128}, 0.5}, {{33, 128, 130}, 0.3}, {{64, 128, 3}, 0.0}, {{8, 300, 300}, 0.0},
};

class KernelsTest : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }
  int saved_ = 1;
};

TEST_P(KernelsTest, BackendsAreBitIdentical) {
  std::mt19937_64 rng(11);
  for (const Case& c : kCases) {
    const DenseShape s = c.shape;
    const Matrix x = testing::random_matrix(s.batch, s.in, rng, c.sparsity);
    const Matrix w = testing::random_matrix(s.in, s.out, rng);
    const Matrix bias = testing::random_matrix(1, s.out, rng);
    const Matrix delta = testing::random_matrix(s.batch, s.out, rng, 0.5);

    Matrix y1(s.batch, s.out), y2(s.batch, s.out);
    kernels::dense_forward(Backend::serial, x.values(), w.values(), bias.values(), y1.values(), s);
    kernels::dense_forward(Backend::omp, x.values(), w.values(), bias.values(), y2.values(), s);
    EXPECT_TRUE(same_bits(y1.values(), y2.values())) << s.batch << "x" << s.in << "x" << s.out;

    Matrix dw1 = testing::random_matrix(s.in, s.out, rng);
    Matrix dw2 = dw1;
    Matrix db1 = testing::random_matrix(1, s.out, rng);
    Matrix db2 = db1;
    kernels::dense_param_grad(Backend::serial, x.values(), delta.values(), dw1.values(),
                              db1.values(), s);
    kernels::dense_param_grad(Backend::omp, x.values(), delta.values(), dw2.values(),
                              db2.values(), s);
    EXPECT_TRUE(same_bits(dw1.values(), dw2.values()));
    EXPECT_TRUE(same_bits(db1.values(), db2.values()));

    for (bool gated : {false, true}) {
      Matrix dx1(s.batch, s.in), dx2(s.batch, s.in);
      std::span<const double> gate = gated ? x.values() : std::span<const double>{};
      kernels::dense_input_grad(Backend::serial, w.values(), delta.values(), gate, dx1.values(), s);
      kernels::dense_input_grad(Backend::omp, w.values(), delta.values(), gate, dx2.values(), s);
      EXPECT_TRUE(same_bits(dx1.values(), dx2.values()));
    }

    Matrix r1 = testing::random_matrix(s.batch, s.out, rng);
    Matrix r2 = r1;
    kernels::relu_inplace(Backend::serial, r1.values());
    kernels::relu_inplace(Backend::omp, r2.values());
    EXPECT_TRUE(same_bits(r1.values(), r2.values()));
  }
}

TEST_P(KernelsTest, ForwardAndGradientAgreeAcrossBackends) {
  std::mt19937_64 rng(12);
  const NetParams net = NetParams::initialized({400, {128, 128}, 3}, 5);
  const Matrix obs = testing::random_matrix(32, 400, rng, 0.9);
  EXPECT_EQ(forward(net, obs, Backend::serial), forward(net, obs, Backend::omp));
  std::vector<std::size_t> actions(32);
  std::vector<double> targets(32);
  for (std::size_t b = 0; b < 32; ++b) {
    actions[b] = b % 3;
    targets[b] = 0.1 * static_cast<double>(b);
  }
  const GradientResult a = gradient(net, obs, actions, targets, Backend::serial);
  const GradientResult b = gradient(net, obs, actions, targets, Backend::omp);
  EXPECT_EQ(a.grad, b.grad);
  EXPECT_EQ(a.loss, b.loss);
}

INSTANTIATE_TEST_SUITE_P(Threads, KernelsTest, ::testing::Values(1, 3, 4));

TEST(Kernels, ForwardSumsInInputOrder) {
  // y = bias + sum_k x_k w_k with zero inputs skipped, left to right.
  const DenseShape s{2, 3, 1};
  const std::vector<double> x{1e16, 1.0, -1e16, 0.0, 1.0, 1.0};
  const std::vector<double> w{1.0, 1.0, 1.0};
  const std::vector<double> bias{0.0};
  std::vector<double> y(2);
  kernels::dense_forward(Backend::omp, x, w, bias, y, s);
  EXPECT_EQ(y[0], (1e16 + 1.0) - 1e16);
  EXPECT_EQ(y[1], 2.0);
}

TEST(Kernels, BackendNames) {
  EXPECT_EQ(parse_backend("serial"), Backend::serial);
  EXPECT_EQ(parse_backend("omp"), Backend::omp);
  EXPECT_EQ(to_string(Backend::omp), "omp");
  EXPECT_THROW(parse_backend("cuda"), std::invalid_argument);
}

}  // namespace
}  // namespace eedqn::tensornet
