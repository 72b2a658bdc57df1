#include "eedqn/buffers/replay_buffer.hpp"

#include <algorithm>

#include "eedqn/error.hpp"

namespace eedqn::buffers {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("replay buffer capacity must be positive");
  items_.reserve(std::min<std::size_t>(capacity, 1u << 16));
}

void ReplayBuffer::push(Transition transition) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(transition));
    return;
  }
  items_[head_] = std::move(transition);
  head_ = (head_ + 1) % capacity_;
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t batch_size,
                                                    std::mt19937_64& rng) const {
  if (items_.empty()) throw UsageError("cannot sample from an empty replay buffer");
  std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
  std::vector<const Transition*> batch(batch_size);
  for (auto& item : batch) item = &items_[pick(rng)];
  return batch;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= items_.size()) throw UsageError("replay buffer index out of range");
  return items_[(head_ + i) % items_.size()];
}

}  // namespace eedqn::buffers
