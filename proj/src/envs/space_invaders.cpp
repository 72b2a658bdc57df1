#include <algorithm>
#include <cstdlib>

#include "eedqn/envs/minatar.hpp"

namespace eedqn::envs {
namespace {

using Grid = std::array<std::array<bool, 10>, 10>;

bool column_has(const Grid& g, int x) {
  for (const auto& row : g) {
    if (row[x]) return true;
  }
  return false;
}

bool row_has(const Grid& g, int y) {
  return std::any_of(g[y].begin(), g[y].end(), [](bool b) { return b; });
}

int count(const Grid& g) {
  int n = 0;
  for (const auto& row : g) n += static_cast<int>(std::count(row.begin(), row.end(), true));
  return n;
}

// Cyclic shift of rows by `by` (positive = down).
Grid roll_rows(const Grid& g, int by) {
  Grid out{};
  for (int y = 0; y < 10; ++y) out[((y + by) % 10 + 10) % 10] = g[y];
  return out;
}

// Cyclic shift of columns by `by` (positive = right).
Grid roll_cols(const Grid& g, int by) {
  Grid out{};
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) out[y][((x + by) % 10 + 10) % 10] = g[y][x];
  }
  return out;
}

void fill_formation(Grid& g) {
  for (int y = 0; y < 4; ++y) {
    for (int x = 2; x < 8; ++x) g[y][x] = true;
  }
}

}  // namespace

SpaceInvaders::SpaceInvaders() : spec_{"space_invaders", 4, {10, 10, 6}, 1.0} {}

void SpaceInvaders::do_reset(std::uint64_t) {
  pos_ = 5;
  friendly_ = {};
  enemy_ = {};
  aliens_ = {};
  fill_formation(aliens_);
  alien_dir_ = -1;
  move_interval_ = kEnemyMoveInterval;
  alien_move_timer_ = move_interval_;
  alien_shot_timer_ = kEnemyShotInterval;
  shot_timer_ = 0;
}

std::pair<double, bool> SpaceInvaders::do_step(std::size_t action) {
  double reward = 0.0;
  bool terminal = false;

  if (action == 3 && shot_timer_ == 0) {
    friendly_[9][pos_] = true;
    shot_timer_ = kShotCoolDown;
  } else if (action == 1) {
    pos_ = std::max(0, pos_ - 1);
  } else if (action == 2) {
    pos_ = std::min(9, pos_ + 1);
  }

  friendly_ = roll_rows(friendly_, -1);
  friendly_[9].fill(false);

  enemy_ = roll_rows(enemy_, 1);
  enemy_[0].fill(false);
  if (enemy_[9][pos_]) terminal = true;

  if (aliens_[9][pos_]) terminal = true;
  if (alien_move_timer_ == 0) {
    alien_move_timer_ = std::min(count(aliens_), move_interval_);
    if ((column_has(aliens_, 0) && alien_dir_ < 0) || (column_has(aliens_, 9) && alien_dir_ > 0)) {
      alien_dir_ = -alien_dir_;
      if (row_has(aliens_, 9)) terminal = true;
      aliens_ = roll_rows(aliens_, 1);
    } else {
      aliens_ = roll_cols(aliens_, alien_dir_);
    }
    if (aliens_[9][pos_]) terminal = true;
  }
  if (alien_shot_timer_ == 0) {
    alien_shot_timer_ = kEnemyShotInterval;
    // Nearest non-empty column to the cannon, lowest column on ties; the
    // shot starts from that column's bottom-most alien.
    for (int d = 0; d < 10; ++d) {
      bool fired = false;
      for (int x : {pos_ - d, pos_ + d}) {
        if (x < 0 || x > 9 || !column_has(aliens_, x)) continue;
        for (int y = 9; y >= 0; --y) {
          if (aliens_[y][x]) {
            enemy_[y][x] = true;
            break;
          }
        }
        fired = true;
        break;
      }
      if (fired) break;
    }
  }

  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      if (aliens_[y][x] && friendly_[y][x]) {
        reward += 1.0;
        aliens_[y][x] = false;
        friendly_[y][x] = false;
      }
    }
  }

  if (shot_timer_ > 0) --shot_timer_;
  --alien_move_timer_;
  --alien_shot_timer_;
  if (count(aliens_) == 0) fill_formation(aliens_);
  return {reward, terminal};
}

Observation SpaceInvaders::observe() const {
  Observation obs(spec_.shape);
  obs.set(9, pos_, 0);
  for (std::size_t y = 0; y < 10; ++y) {
    for (std::size_t x = 0; x < 10; ++x) {
      if (aliens_[y][x]) {
        obs.set(y, x, 1);
        obs.set(y, x, alien_dir_ < 0 ? 2 : 3);
      }
      if (friendly_[y][x]) obs.set(y, x, 4);
      if (enemy_[y][x]) obs.set(y, x, 5);
    }
  }
  return obs;
}

}  // namespace eedqn::envs
