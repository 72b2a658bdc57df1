#include <algorithm>
#include <random>

#include "eedqn/envs/minatar.hpp"

namespace eedqn::envs {

Asterix::Asterix() : spec_{"asterix", 5, {10, 10, 4}, 1.0} {}

void Asterix::do_reset(std::uint64_t seed) {
  rng_.seed(seed);
  player_x_ = 5;
  player_y_ = 5;
  entities_.fill(std::nullopt);
  spawn_speed_ = 10;
  spawn_timer_ = spawn_speed_;
  move_speed_ = 5;
  move_timer_ = move_speed_;
}

void Asterix::spawn_entity() {
  const bool moving_right = std::uniform_int_distribution<int>(0, 1)(rng_) == 0;
  const bool gold = std::uniform_int_distribution<int>(0, 2)(rng_) == 0;  // p = 1/3
  std::vector<int> free_slots;
  for (int i = 0; i < static_cast<int>(entities_.size()); ++i) {
    if (!entities_[i]) free_slots.push_back(i);
  }
  if (free_slots.empty()) return;
  const int slot = free_slots[std::uniform_int_distribution<std::size_t>(
      0, free_slots.size() - 1)(rng_)];
  entities_[slot] = Entity{moving_right ? 0 : 9, slot + 1, moving_right, gold};
}

std::pair<double, bool> Asterix::do_step(std::size_t action) {
  double reward = 0.0;
  bool terminal = false;

  if (spawn_timer_ == 0) {
    spawn_entity();
    spawn_timer_ = spawn_speed_;
  }

  switch (action) {
    case 1: player_x_ = std::max(0, player_x_ - 1); break;
    case 2: player_y_ = std::max(1, player_y_ - 1); break;
    case 3: player_x_ = std::min(9, player_x_ + 1); break;
    case 4: player_y_ = std::min(8, player_y_ + 1); break;
    default: break;
  }

  auto collide = [&](std::optional<Entity>& slot) {
    if (!slot || slot->x != player_x_ || slot->y != player_y_) return;
    if (slot->gold) {
      slot.reset();
      reward += 1.0;
    } else {
      terminal = true;
    }
  };

  for (auto& slot : entities_) collide(slot);
  if (move_timer_ == 0) {
    move_timer_ = move_speed_;
    for (auto& slot : entities_) {
      if (!slot) continue;
      slot->x += slot->moving_right ? 1 : -1;
      if (slot->x < 0 || slot->x > 9) {
        slot.reset();
        continue;
      }
      collide(slot);
    }
  }

  --spawn_timer_;
  --move_timer_;
  return {reward, terminal};
}

Observation Asterix::observe() const {
  Observation obs(spec_.shape);
  obs.set(player_y_, player_x_, 0);
  for (const auto& slot : entities_) {
    if (!slot) continue;
    obs.set(slot->y, slot->x, slot->gold ? 3 : 1);
    const int back_x = slot->moving_right ? slot->x - 1 : slot->x + 1;
    if (back_x >= 0 && back_x <= 9) obs.set(slot->y, back_x, 2);
  }
  return obs;
}

}  // namespace eedqn::envs
