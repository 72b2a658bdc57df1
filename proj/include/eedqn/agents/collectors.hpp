#pragma once

// Turn the raw per-step stream into stored transitions.

#include <deque>
#include <optional>
#include <vector>

#include "eedqn/buffers/replay_buffer.hpp"
#include "eedqn/envs/environment.hpp"

namespace eedqn::agents {

/// One environment tick as seen by a collector.
struct StepOutcome {
  const envs::Observation* state = nullptr;  // s before the action
  std::size_t action = 0;
  double reward = 0.0;
  const envs::Observation* next = nullptr;  // s' after the action
  bool terminal = false;
  bool truncated = false;  // episode cut by the step cap; closes without terminal flag
};

/// Open elastic segment. `extra_steps` counts the steps beyond the first one
/// already folded into `reward`.
struct ElasticState {
  bool open = false;
  envs::Observation start;
  std::size_t action = 0;
  double reward = 0.0;
  std::size_t extra_steps = 0;
};

/// Elastic-step controller. Folds the step's reward in first
/// (R += gamma^d * r), then closes the segment when z > h or the episode
/// ended, otherwise extends it (d += 1). A closed segment is returned as a
/// transition from the segment's first state and action to s'.
std::optional<buffers::Transition> elastic_step(ElasticState& state, const StepOutcome& outcome,
                                                double z, double h, double gamma);

/// Sliding-window n-step returns: after warm-up every step emits the
/// transition that started n steps earlier; episode ends flush the window
/// with shorter segments.
class NStepCollector {
 public:
  NStepCollector(std::size_t n, double gamma);

  std::vector<buffers::Transition> observe(const StepOutcome& outcome);
  std::size_t pending() const noexcept { return window_.size(); }

 private:
  struct Pending {
    envs::Observation start;
    std::size_t action = 0;
    double reward = 0.0;
    std::size_t steps = 0;
  };

  std::size_t n_;
  double gamma_;
  std::deque<Pending> window_;
};

}  // namespace eedqn::agents
