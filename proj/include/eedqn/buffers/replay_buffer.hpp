#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "eedqn/envs/environment.hpp"

namespace eedqn::buffers {

/// One stored experience. A segment that spans `extra_steps + 1` environment
/// transitions carries the discounted reward sum
///   reward = sum_{k=0..extra_steps} gamma^k r_k
/// and bootstraps from `end` with gamma^(extra_steps + 1) unless terminal.
struct Transition {
  envs::Observation start;
  std::size_t action = 0;
  double reward = 0.0;
  envs::Observation end;
  std::size_t extra_steps = 0;
  bool terminal = false;

  bool multi_step() const noexcept { return extra_steps > 0; }
};

/// Fixed-capacity FIFO ring with uniform sampling with replacement.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition transition);
  /// Pointers stay valid until the next push().
  std::vector<const Transition*> sample(std::size_t batch_size, std::mt19937_64& rng) const;

  std::size_t size() const noexcept { return items_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return items_.empty(); }
  /// i = 0 is the oldest stored item.
  const Transition& at(std::size_t i) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // next slot to overwrite once full
  std::vector<Transition> items_;
};

}  // namespace eedqn::buffers
