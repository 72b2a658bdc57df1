#include <algorithm>
#include <cstdlib>
#include <random>

#include "eedqn/envs/minatar.hpp"

namespace eedqn::envs {

Freeway::Freeway() : spec_{"freeway", 3, {10, 10, 7}, 1.0} {}

void Freeway::randomize_cars(bool initialize) {
  std::uniform_int_distribution<int> speed_dist(1, 5);
  std::uniform_int_distribution<int> coin(0, 1);
  std::array<int, 8> speeds{};
  for (int& s : speeds) s = speed_dist(rng_);
  for (int& s : speeds) s *= coin(rng_) == 0 ? -1 : 1;
  if (initialize) cars_.assign(8, Car{});
  for (int i = 0; i < 8; ++i) {
    if (initialize) {
      cars_[i].x = 0;
      cars_[i].y = i + 1;
    }
    cars_[i].timer = std::abs(speeds[i]);
    cars_[i].speed = speeds[i];
  }
}

void Freeway::do_reset(std::uint64_t seed) {
  rng_.seed(seed);
  randomize_cars(true);
  pos_ = 9;
  move_timer_ = kPlayerSpeed;
  terminate_timer_ = kTimeLimit;
}

std::pair<double, bool> Freeway::do_step(std::size_t action) {
  double reward = 0.0;
  bool terminal = false;

  if (action == 1 && move_timer_ == 0) {
    move_timer_ = kPlayerSpeed;
    pos_ = std::max(0, pos_ - 1);
  } else if (action == 2 && move_timer_ == 0) {
    move_timer_ = kPlayerSpeed;
    pos_ = std::min(9, pos_ + 1);
  }

  // Reaching the top row pays once and restarts the crossing.
  if (pos_ == 0) {
    reward += 1.0;
    randomize_cars(false);
    pos_ = 9;
  }

  for (Car& car : cars_) {
    if (car.x == 4 && car.y == pos_) pos_ = 9;
    if (car.timer == 0) {
      car.timer = std::abs(car.speed);
      car.x += car.speed > 0 ? 1 : -1;
      if (car.x < 0) car.x = 9;
      if (car.x > 9) car.x = 0;
      if (car.x == 4 && car.y == pos_) pos_ = 9;
    } else {
      --car.timer;
    }
  }

  if (move_timer_ > 0) --move_timer_;
  if (--terminate_timer_ < 0) terminal = true;
  return {reward, terminal};
}

Observation Freeway::observe() const {
  Observation obs(spec_.shape);
  obs.set(pos_, 4, 0);
  for (const Car& car : cars_) {
    obs.set(car.y, car.x, 1);
    int back_x = car.speed > 0 ? car.x - 1 : car.x + 1;
    if (back_x < 0) back_x = 9;
    if (back_x > 9) back_x = 0;
    obs.set(car.y, back_x, 1 + std::abs(car.speed));
  }
  return obs;
}

}  // namespace eedqn::envs
