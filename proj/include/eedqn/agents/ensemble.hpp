#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "eedqn/agents/aggregation.hpp"
#include "eedqn/agents/config.hpp"
#include "eedqn/buffers/replay_buffer.hpp"
#include "eedqn/envs/environment.hpp"
#include "eedqn/tensornet/adam.hpp"
#include "eedqn/tensornet/mlp.hpp"

namespace eedqn::agents {

/// N online networks, their frozen target copies and one optimizer each.
/// Target i is only ever a copy of online i.
class Ensemble {
 public:
  Ensemble(const tensornet::Topology& topology, std::size_t members,
           tensornet::AdamConfig adam, std::uint64_t seed);
  /// Wraps existing online networks; targets start as copies.
  Ensemble(std::vector<tensornet::NetParams> online, tensornet::AdamConfig adam);

  std::size_t size() const noexcept { return online_.size(); }
  const tensornet::Topology& topology() const noexcept { return online_.front().topology(); }

  std::span<tensornet::NetParams> online() noexcept { return online_; }
  std::span<const tensornet::NetParams> online() const noexcept { return online_; }
  std::span<tensornet::NetParams> targets() noexcept { return targets_; }
  std::span<const tensornet::NetParams> targets() const noexcept { return targets_; }
  tensornet::AdamState& optimizer(std::size_t i) { return optimizers_.at(i); }

  void sync_targets();
  /// Combined fingerprint of all target networks.
  std::uint64_t target_fingerprint() const;

 private:
  std::vector<tensornet::NetParams> online_;
  std::vector<tensornet::NetParams> targets_;
  std::vector<tensornet::AdamState> optimizers_;
};

/// Stacks observations into a batch x features matrix.
tensornet::Matrix stack_observations(std::span<const envs::Observation* const> observations);

/// Per-action mean over `nets` for a single observation.
std::vector<double> mean_q(std::span<const tensornet::NetParams> nets, const envs::Observation& obs,
                           tensornet::Backend backend = tensornet::Backend::omp);

struct ActionChoice {
  std::size_t action = 0;
  double greedy_value = 0.0;  // max_a mean_i Q_i(s, a) over the online nets
  bool explored = false;
};

/// Epsilon-greedy over the mean of the online networks; greedy ties go to
/// the lowest action index.
ActionChoice select_action(const envs::Observation& obs, double epsilon, const Ensemble& ensemble,
                           std::mt19937_64& rng,
                           tensornet::Backend backend = tensornet::Backend::omp);

/// z = |V(s) - V(s')| where V scalarises the per-action mean over `nets`
/// (greedy: max over actions; mean: mean over actions).
double state_value_diff(std::span<const tensornet::NetParams> nets, const envs::Observation& s,
                        const envs::Observation& s_next,
                        ValueScalarization scalarization = ValueScalarization::greedy,
                        tensornet::Backend backend = tensornet::Backend::omp);

/// Learning target for one stored segment:
///   terminal:     y = R
///   otherwise:    y = R + gamma^(d+1) * bootstrap_value(mode, d > 0, targets(s'), online(s'))
double compute_target(const buffers::Transition& transition,
                      std::span<const tensornet::NetParams> targets,
                      std::span<const tensornet::NetParams> online, const AggregationMode& mode,
                      double gamma, tensornet::Backend backend = tensornet::Backend::omp);

/// Batched form of compute_target.
std::vector<double> compute_targets(std::span<const buffers::Transition* const> batch,
                                    std::span<const tensornet::NetParams> targets,
                                    std::span<const tensornet::NetParams> online,
                                    const AggregationMode& mode, double gamma,
                                    tensornet::Backend backend = tensornet::Backend::omp);

struct LearnStats {
  std::vector<double> losses;  // one per member
  double max_abs_q = 0.0;      // max |Q_i(s, a)| over the batch and members
};

/// One shared target per sample; every online member takes exactly one
/// optimizer step toward it. Targets are not touched.
LearnStats learn_step(Ensemble& ensemble, std::span<const buffers::Transition* const> batch,
                      const AggregationMode& mode, double gamma,
                      tensornet::Backend backend = tensornet::Backend::omp);

}  // namespace eedqn::agents
