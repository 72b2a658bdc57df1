#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eedqn::envs {

struct ObsShape {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;

  std::size_t size() const noexcept { return height * width * channels; }
  bool operator==(const ObsShape&) const = default;
};

/// Binary H x W x C grid, channel-last like MinAtar: cell (y, x, c) lives at
/// index (y * W + x) * C + c of the flattened vector.
class Observation {
 public:
  Observation() = default;
  explicit Observation(ObsShape shape) : shape_(shape), cells_(shape.size(), 0) {}

  const ObsShape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return cells_.size(); }

  bool at(std::size_t y, std::size_t x, std::size_t c) const { return cells_[index(y, x, c)] != 0; }
  void set(std::size_t y, std::size_t x, std::size_t c, bool on = true) {
    cells_[index(y, x, c)] = on ? 1 : 0;
  }

  std::span<const std::uint8_t> cells() const noexcept { return cells_; }
  /// Number of active cells in channel c.
  std::size_t count(std::size_t c) const;
  /// Writes the grid as 0.0/1.0 values; out.size() must equal size().
  void flatten_into(std::span<double> out) const;
  std::vector<double> flatten() const;

  bool operator==(const Observation&) const = default;

 private:
  std::size_t index(std::size_t y, std::size_t x, std::size_t c) const noexcept {
    return (y * shape_.width + x) * shape_.channels + c;
  }

  ObsShape shape_;
  std::vector<std::uint8_t> cells_;
};

struct StepResult {
  Observation next;
  double reward = 0.0;
  bool terminal = false;
};

struct EnvSpec {
  std::string name;
  std::size_t action_count = 0;
  ObsShape shape;
  double r_max = 1.0;
};

/// Episodic environment. step() after a terminal step throws UsageError
/// until the next reset().
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const EnvSpec& spec() const noexcept = 0;

  Observation reset(std::uint64_t seed);
  StepResult step(std::size_t action);
  bool terminal() const noexcept { return terminal_; }

 protected:
  virtual void do_reset(std::uint64_t seed) = 0;
  /// Advances one tick; returns (reward, terminal).
  virtual std::pair<double, bool> do_step(std::size_t action) = 0;
  virtual Observation observe() const = 0;

 private:
  bool terminal_ = true;
};

/// "breakout", "freeway", "asterix", "space_invaders" or "chain:<n>".
std::unique_ptr<Environment> make_environment(std::string_view name);
/// Spec of a named environment without keeping an instance.
EnvSpec environment_spec(std::string_view name);
std::vector<std::string> available_environments();

}  // namespace eedqn::envs
