#include "eedqn/metrics/permutation.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eedqn/error.hpp"

namespace eedqn::metrics {
namespace {

constexpr std::size_t kChunks = 64;

void require_samples(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("permutation test: empty sample");
}

// Ties with the observed statistic must count as "at least as extreme" even
// after rounding in a different summation order.
bool reaches(double stat, double observed) {
  return stat >= observed - 1e-12 * std::max(1.0, std::abs(observed));
}

double split_statistic(const std::vector<double>& pooled, std::size_t n_a, double total) {
  double sum_a = 0.0;
  for (std::size_t i = 0; i < n_a; ++i) sum_a += pooled[i];
  const std::size_t n_b = pooled.size() - n_a;
  return std::abs(sum_a / static_cast<double>(n_a) - (total - sum_a) / static_cast<double>(n_b));
}

std::uint64_t count_chunk(const std::vector<double>& pooled, std::size_t n_a, double total,
                          double observed, std::size_t begin, std::size_t end, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> work = pooled;
  std::uint64_t hits = 0;
  for (std::size_t r = begin; r < end; ++r) {
    // Partial Fisher-Yates: only the first n_a slots need a uniform draw.
    for (std::size_t i = 0; i < n_a; ++i) {
      const std::size_t j = std::uniform_int_distribution<std::size_t>(i, work.size() - 1)(rng);
      std::swap(work[i], work[j]);
    }
    if (reaches(split_statistic(work, n_a, total), observed)) ++hits;
  }
  return hits;
}

}  // namespace

double mean_difference(std::span<const double> a, std::span<const double> b) {
  require_samples(a, b);
  double sa = 0.0, sb = 0.0;
  for (double v : a) sa += v;
  for (double v : b) sb += v;
  return std::abs(sa / static_cast<double>(a.size()) - sb / static_cast<double>(b.size()));
}

PermutationResult exhaustive_permutation_test(std::span<const double> a,
                                              std::span<const double> b) {
  require_samples(a, b);
  const std::size_t n = a.size() + b.size();
  if (n > 20) throw std::invalid_argument("exhaustive permutation test limited to 20 values");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());

  PermutationResult result;
  result.exhaustive = true;
  result.observed = mean_difference(a, b);
  std::uint64_t hits = 0;
  std::vector<double> ga, gb;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != a.size()) continue;
    ga.clear();
    gb.clear();
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? ga : gb).push_back(pooled[i]);
    ++result.permutations;
    if (reaches(mean_difference(ga, gb), result.observed)) ++hits;
  }
  result.p_value = static_cast<double>(hits) / static_cast<double>(result.permutations);
  return result;
}

PermutationResult monte_carlo_permutation_test(std::span<const double> a,
                                               std::span<const double> b,
                                               std::size_t n_permutations, std::uint64_t seed,
                                               tensornet::Backend backend) {
  require_samples(a, b);
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  double total = 0.0;
  for (double v : pooled) total += v;

  PermutationResult result;
  result.observed = mean_difference(a, b);
  result.permutations = n_permutations + 1;
  const std::size_t n_a = a.size();
  const double observed = result.observed;
  auto chunk_begin = [n_permutations](std::size_t c) { return c * n_permutations / kChunks; };

  std::uint64_t hits = 0;
  const auto chunks = static_cast<std::ptrdiff_t>(kChunks);
  if (backend == tensornet::Backend::omp) {
#pragma omp parallel for schedule(static) reduction(+ : hits)
    for (std::ptrdiff_t c = 0; c < chunks; ++c) {
      hits += count_chunk(pooled, n_a, total, observed, chunk_begin(c), chunk_begin(c + 1),
                          mix_seed(seed, c));
    }
  } else {
    for (std::ptrdiff_t c = 0; c < chunks; ++c) {
      hits += count_chunk(pooled, n_a, total, observed, chunk_begin(c), chunk_begin(c + 1),
                          mix_seed(seed, c));
    }
  }
  result.p_value = static_cast<double>(hits + 1) / static_cast<double>(n_permutations + 1);
  return result;
}

PermutationResult permutation_test(std::span<const double> a, std::span<const double> b,
                                   std::size_t n_permutations, std::uint64_t seed,
                                   tensornet::Backend backend) {
  require_samples(a, b);
  if (a.size() + b.size() <= kExhaustiveLimit) return exhaustive_permutation_test(a, b);
  return monte_carlo_permutation_test(a, b, n_permutations, seed, backend);
}

}  // namespace eedqn::metrics
