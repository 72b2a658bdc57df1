#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eedqn/agents/aggregation.hpp"
#include "eedqn/buffers/diff_buffer.hpp"
#include "eedqn/tensornet/kernels.hpp"
#include "json.hpp"

namespace eedqn::agents {

enum class StepMode { single, fixed_n, elastic };

/// How the vector Avg_i Q(s, .) is reduced to a scalar for the state-value
/// difference z.
enum class ValueScalarization { greedy, mean };

/// Which Q-values feed the per-epoch max |Q| statistic.
enum class QStatSource { acting, training };

/// Linear decay from `start` to `floor` over the first `decay_steps` steps.
struct ExplorationSchedule {
  double start = 1.0;
  double floor = 0.01;
  std::uint64_t decay_steps = 250'000;

  double at(std::uint64_t step) const noexcept;
};

struct AlgoConfig {
  std::string name = "dqn";
  AggregationMode aggregation{};
  std::size_t ensemble_size = 1;
  StepMode step_mode = StepMode::single;
  std::size_t n_step = 1;  // fixed_n only

  double gamma = 0.99;
  std::size_t target_update_interval = 1000;
  std::size_t update_frequency = 1;
  std::size_t batch_size = 32;
  ExplorationSchedule exploration{};

  std::size_t replay_capacity = 100'000;
  std::size_t diff_capacity = 10'000;
  std::size_t prefill_steps = 5'000;
  std::size_t max_episode_steps = 10'000;

  std::vector<std::size_t> hidden{128, 128};
  double learning_rate = 0.00025;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 0.0003125;

  buffers::StdConvention diff_std = buffers::StdConvention::population;
  ValueScalarization value_scalarization = ValueScalarization::greedy;
  QStatSource q_stat = QStatSource::acting;
  tensornet::Backend backend = tensornet::Backend::omp;

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

/// Named algorithm presets:
///   dqn, ddqn, avgdqn, maxmin, nstep, esdqn, eedqn, variant_eedqn,
///   min_eedqn, mean_eedqn, convex1_eedqn (0.75), convex2_eedqn (0.5),
///   convex3_eedqn (0.25)
AlgoConfig make_algorithm(const std::string& name);
std::vector<std::string> algorithm_names();

nlohmann::json to_json(const AlgoConfig& config);
/// Starts from `base` and overrides every key present in `j`.
AlgoConfig apply_overrides(AlgoConfig base, const nlohmann::json& j);

}  // namespace eedqn::agents
