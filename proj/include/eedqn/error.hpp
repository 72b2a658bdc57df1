#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eedqn {

/// Bad names, inconsistent shapes or out-of-range hyper-parameters. Raised
/// before any training work starts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// API misuse at run time (stepping a finished episode, sampling an empty
/// buffer).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A non-finite value reached a place that must stay finite. Aborts the run.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// splitmix64 finalizer; used to derive independent stream seeds from one
/// run seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace eedqn
