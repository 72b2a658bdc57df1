#include <algorithm>
#include <random>

#include "eedqn/envs/minatar.hpp"

namespace eedqn::envs {

Breakout::Breakout() : spec_{"breakout", 3, {10, 10, 4}, 1.0} {}

void Breakout::do_reset(std::uint64_t seed) {
  rng_.seed(seed);
  ball_y_ = 3;
  const bool from_right = std::uniform_int_distribution<int>(0, 1)(rng_) == 1;
  ball_x_ = from_right ? 9 : 0;
  ball_dir_ = from_right ? 3 : 2;
  paddle_ = 4;
  for (auto& row : bricks_) row.fill(false);
  for (int y = 1; y <= 3; ++y) bricks_[y].fill(true);
  strike_ = false;
  last_x_ = ball_x_;
  last_y_ = ball_y_;
}

// Ball directions: 0 up-left, 1 up-right, 2 down-right, 3 down-left.
std::pair<double, bool> Breakout::do_step(std::size_t action) {
  double reward = 0.0;
  bool terminal = false;

  if (action == 1) paddle_ = std::max(0, paddle_ - 1);
  if (action == 2) paddle_ = std::min(9, paddle_ + 1);

  last_x_ = ball_x_;
  last_y_ = ball_y_;
  int new_x = ball_x_ + ((ball_dir_ == 1 || ball_dir_ == 2) ? 1 : -1);
  int new_y = ball_y_ + ((ball_dir_ == 2 || ball_dir_ == 3) ? 1 : -1);

  constexpr int kFlipX[4] = {1, 0, 3, 2};
  constexpr int kFlipY[4] = {3, 2, 1, 0};
  constexpr int kPaddleEdge[4] = {2, 3, 0, 1};

  bool strike_toggle = false;
  if (new_x < 0 || new_x > 9) {
    new_x = new_x < 0 ? 0 : 9;
    ball_dir_ = kFlipX[ball_dir_];
  }
  if (new_y < 0) {
    new_y = 0;
    ball_dir_ = kFlipY[ball_dir_];
  } else if (bricks_[new_y][new_x]) {
    strike_toggle = true;
    if (!strike_) {
      reward += 1.0;
      strike_ = true;
      bricks_[new_y][new_x] = false;
      new_y = last_y_;
      ball_dir_ = kFlipY[ball_dir_];
    }
  } else if (new_y == 9) {
    bool any_brick = false;
    for (const auto& row : bricks_) {
      for (bool b : row) any_brick = any_brick || b;
    }
    if (!any_brick) {
      for (int y = 1; y <= 3; ++y) bricks_[y].fill(true);
    }
    if (ball_x_ == paddle_) {
      ball_dir_ = kFlipY[ball_dir_];
      new_y = last_y_;
    } else if (new_x == paddle_) {
      ball_dir_ = kPaddleEdge[ball_dir_];
      new_y = last_y_;
    } else {
      terminal = true;
    }
  }
  if (!strike_toggle) strike_ = false;

  ball_x_ = new_x;
  ball_y_ = new_y;
  return {reward, terminal};
}

Observation Breakout::observe() const {
  Observation obs(spec_.shape);
  obs.set(ball_y_, ball_x_, ball);
  obs.set(9, paddle_, paddle);
  obs.set(last_y_, last_x_, trail);
  for (std::size_t y = 0; y < 10; ++y) {
    for (std::size_t x = 0; x < 10; ++x) {
      if (bricks_[y][x]) obs.set(y, x, brick);
    }
  }
  return obs;
}

}  // namespace eedqn::envs
