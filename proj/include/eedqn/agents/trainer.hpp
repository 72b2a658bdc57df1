#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eedqn/agents/config.hpp"
#include "eedqn/agents/ensemble.hpp"
#include "eedqn/envs/environment.hpp"
#include "eedqn/metrics/metrics.hpp"
#include "eedqn/tensornet/mlp.hpp"

namespace eedqn::agents {

struct StepEvent {
  std::uint64_t step = 0;
  bool learned = false;
  bool synced = false;
  double epsilon = 0.0;
  double max_abs_q = 0.0;  // this step's contribution to its window's max |Q|
};

/// Optional per-step callback, invoked after the step's learn/sync work.
using StepObserver = std::function<void(const StepEvent&, const Ensemble&)>;

struct RunLog {
  std::string env;
  std::string algo;
  std::uint64_t seed = 0;
  std::uint64_t total_steps = 0;
  double r_max = 1.0;
  double gamma = 0.99;

  std::vector<metrics::EpisodeRecord> episodes;
  std::vector<double> window_max_abs_q;  // one per epoch window

  std::uint64_t learn_updates = 0;
  std::uint64_t target_syncs = 0;
  std::uint64_t stored_transitions = 0;
  std::uint64_t multi_step_transitions = 0;

  std::vector<tensornet::NetParams> final_online;  // checkpoint payload
};

/// One seeded training run. Acting is epsilon-greedy on the online mean;
/// every `update_frequency` steps one mini-batch update runs once the replay
/// holds a batch; targets sync every `target_update_interval` updates.
/// Elastic mode compares the value of the open segment's first state with
/// the newly reached state through the target networks. All randomness is
/// derived from `seed`.
RunLog run_training(const AlgoConfig& config, const std::string& env_name, std::uint64_t seed,
                    std::uint64_t total_steps, const StepObserver& observer = {});

}  // namespace eedqn::agents
