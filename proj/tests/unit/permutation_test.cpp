#include <gtest/gtest.h>
#include <omp.h>

#include <random>
#include <stdexcept>

#include "eedqn/metrics/permutation.hpp"
#include "oracles.hpp"

namespace eedqn::metrics {
namespace {

TEST(Permutation, ExchangeableSamples) {
  const std::vector<double> a{1.0, 2.0}, b{1.0, 2.0};
  const PermutationResult r = permutation_test(a, b, 1000, 0);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.observed, 0.0);
}

TEST(Permutation, SeparatedSamples) {
  const std::vector<double> a{0.0, 0.0, 0.0}, b{10.0, 10.0, 10.0};
  const PermutationResult r = exhaustive_permutation_test(a, b);
  EXPECT_EQ(r.permutations, 20u);
  EXPECT_EQ(r.p_value, 0.1);
  EXPECT_EQ(r.observed, 10.0);
}

TEST(Permutation, ExhaustiveMatchesEnumerationOracle) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> x(0.0, 1.0);
  for (std::size_t na = 1; na <= 6; ++na) {
    for (std::size_t nb = 1; na + nb <= 12; nb += 2) {
      std::vector<double> a(na), b(nb);
      for (double& v : a) v = x(rng) + 0.5;
      for (double& v : b) v = x(rng);
      EXPECT_EQ(exhaustive_permutation_test(a, b).p_value, oracle::exhaustive_p(a, b))
          << na << "+" << nb;
    }
  }
}

TEST(Permutation, MonteCarloCloseToExhaustive) {
  const std::vector<double> a{3.1, 2.4, 5.0, 4.2, 3.3}, b{1.0, 2.2, 2.9, 1.7, 3.0, 0.4};
  const double exact = exhaustive_permutation_test(a, b).p_value;
  const PermutationResult mc = monte_carlo_permutation_test(a, b, 100000, 7);
  EXPECT_FALSE(mc.exhaustive);
  EXPECT_NEAR(mc.p_value, exact, 0.02);
}

TEST(Permutation, MonteCarloIndependentOfBackendAndThreads) {
  std::vector<double> a(20), b(25);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> x(0.0, 1.0);
  for (double& v : a) v = x(rng) + 0.3;
  for (double& v : b) v = x(rng);
  const double serial = monte_carlo_permutation_test(a, b, 20000, 11, tensornet::Backend::serial).p_value;
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    EXPECT_EQ(monte_carlo_permutation_test(a, b, 20000, 11, tensornet::Backend::omp).p_value, serial);
  }
  omp_set_num_threads(saved);
}

TEST(Permutation, PValueBounds) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> x(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(10), b(10);
    for (double& v : a) v = x(rng) + trial * 0.5;
    for (double& v : b) v = x(rng);
    const std::size_t n = 500;
    const PermutationResult r = permutation_test(a, b, n, trial);
    EXPECT_GE(r.p_value, 1.0 / (n + 1));
    EXPECT_LE(r.p_value, 1.0);
    EXPECT_EQ(r.p_value, permutation_test(a, b, n, trial).p_value);
  }
  EXPECT_THROW(permutation_test({}, std::vector{1.0}, 10, 0), std::invalid_argument);
}

TEST(Permutation, MeanDifference) {
  EXPECT_EQ(mean_difference(std::vector{1.0, 3.0}, std::vector{5.0}), 3.0);
}

}  // namespace
}  // namespace eedqn::metrics
