#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "eedqn/tensornet/kernels.hpp"

namespace eedqn::metrics {

/// Two-sided permutation test on |mean(a) - mean(b)|.
struct PermutationResult {
  double p_value = 1.0;
  double observed = 0.0;
  std::uint64_t permutations = 0;  // relabelings evaluated, observed one included
  bool exhaustive = false;
};

/// Pooled sizes up to this use exhaustive enumeration.
inline constexpr std::size_t kExhaustiveLimit = 12;

/// |mean(a) - mean(b)|
double mean_difference(std::span<const double> a, std::span<const double> b);

/// Every split of the pooled values into groups of |a| and |b|; p is the
/// fraction whose statistic reaches the observed one.
PermutationResult exhaustive_permutation_test(std::span<const double> a, std::span<const double> b);

/// p = (1 + #{resamples with statistic >= observed}) / (n_permutations + 1).
/// Resamples are split into fixed chunks with their own seeded streams, so
/// the result depends only on `seed`, never on the thread count or backend.
PermutationResult monte_carlo_permutation_test(std::span<const double> a,
                                               std::span<const double> b,
                                               std::size_t n_permutations, std::uint64_t seed,
                                               tensornet::Backend backend = tensornet::Backend::omp);

/// Exhaustive when |a| + |b| <= 12, Monte Carlo otherwise. Throws
/// std::invalid_argument for an empty sample.
PermutationResult permutation_test(std::span<const double> a, std::span<const double> b,
                                   std::size_t n_permutations, std::uint64_t seed,
                                   tensornet::Backend backend = tensornet::Backend::omp);

}  // namespace eedqn::metrics
