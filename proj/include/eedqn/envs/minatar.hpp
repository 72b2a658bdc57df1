#pragma once

// Ports of the MinAtar games on a 10x10 grid. Dynamics follow the MinAtar
// reference implementation with sticky actions and difficulty ramping
// turned off. Each game uses its minimal action set; the indices below are
// the action ids accepted by step().
//
// Within one tick the player's move is resolved first, then the world
// (ball, cars, enemies) advances, matching the reference ordering.

#include <array>
#include <optional>
#include <random>
#include <vector>

#include "eedqn/envs/environment.hpp"

namespace eedqn::envs {

/// Actions: 0 no-op, 1 left, 2 right.
/// Channels: 0 paddle, 1 ball, 2 trail, 3 brick.
class Breakout final : public Environment {
 public:
  enum Channel : std::size_t { paddle = 0, ball = 1, trail = 2, brick = 3 };

  Breakout();
  const EnvSpec& spec() const noexcept override { return spec_; }

 protected:
  void do_reset(std::uint64_t seed) override;
  std::pair<double, bool> do_step(std::size_t action) override;
  Observation observe() const override;

 private:
  EnvSpec spec_;
  std::mt19937_64 rng_;
  int ball_x_ = 0, ball_y_ = 0, ball_dir_ = 0;
  int last_x_ = 0, last_y_ = 0;
  int paddle_ = 4;
  bool strike_ = false;
  std::array<std::array<bool, 10>, 10> bricks_{};  // [y][x]
};

/// Actions: 0 no-op, 1 up, 2 down.
/// Channels: 0 chicken, 1 car, 2..6 car trail by speed 1..5.
class Freeway final : public Environment {
 public:
  static constexpr int kPlayerSpeed = 3;
  static constexpr int kTimeLimit = 2500;

  Freeway();
  const EnvSpec& spec() const noexcept override { return spec_; }

 protected:
  void do_reset(std::uint64_t seed) override;
  std::pair<double, bool> do_step(std::size_t action) override;
  Observation observe() const override;

 private:
  struct Car {
    int x = 0, y = 0, timer = 0, speed = 0;  // speed signed by direction
  };
  void randomize_cars(bool initialize);

  EnvSpec spec_;
  std::mt19937_64 rng_;
  std::vector<Car> cars_;
  int pos_ = 9;
  int move_timer_ = 0;
  int terminate_timer_ = 0;
};

/// Actions: 0 no-op, 1 left, 2 up, 3 right, 4 down.
/// Channels: 0 player, 1 enemy, 2 trail, 3 gold.
class Asterix final : public Environment {
 public:
  Asterix();
  const EnvSpec& spec() const noexcept override { return spec_; }

 protected:
  void do_reset(std::uint64_t seed) override;
  std::pair<double, bool> do_step(std::size_t action) override;
  Observation observe() const override;

 private:
  struct Entity {
    int x = 0, y = 0;
    bool moving_right = false;
    bool gold = false;
  };
  void spawn_entity();

  EnvSpec spec_;
  std::mt19937_64 rng_;
  std::array<std::optional<Entity>, 8> entities_{};
  int player_x_ = 5, player_y_ = 5;
  int spawn_speed_ = 10, spawn_timer_ = 10;
  int move_speed_ = 5, move_timer_ = 5;
};

/// Actions: 0 no-op, 1 left, 2 right, 3 fire.
/// Channels: 0 cannon, 1 alien, 2 alien moving left, 3 alien moving right,
/// 4 friendly bullet, 5 enemy bullet.
class SpaceInvaders final : public Environment {
 public:
  static constexpr int kShotCoolDown = 5;
  static constexpr int kEnemyMoveInterval = 12;
  static constexpr int kEnemyShotInterval = 10;

  SpaceInvaders();
  const EnvSpec& spec() const noexcept override { return spec_; }

 protected:
  void do_reset(std::uint64_t seed) override;
  std::pair<double, bool> do_step(std::size_t action) override;
  Observation observe() const override;

 private:
  using Grid = std::array<std::array<bool, 10>, 10>;  // [y][x]

  EnvSpec spec_;
  Grid aliens_{}, friendly_{}, enemy_{};
  int pos_ = 5;
  int alien_dir_ = -1;
  int move_interval_ = kEnemyMoveInterval;
  int alien_move_timer_ = 0, alien_shot_timer_ = 0, shot_timer_ = 0;
};

}  // namespace eedqn::envs
