#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace eedqn::metrics {

inline constexpr std::size_t kEpochCount = 100;

struct EpisodeRecord {
  std::uint64_t end_step = 0;  // 0-based training step on which the episode ended
  std::uint64_t episode = 0;
  double reward = 0.0;
};

struct EpochStats {
  std::size_t epoch = 0;
  double mean_reward = 0.0;
  double max_abs_q = 0.0;
  std::size_t episode_count = 0;
  /// No episode ended in this window; mean_reward repeats the previous
  /// window's value (0 before the first finished episode).
  bool carried_forward = false;
};

struct EpochSeries {
  std::vector<EpochStats> epochs;
  bool empty_log = false;
};

struct RunSummary {
  std::string env;
  std::string algo;
  std::uint64_t seed = 0;
  double final_score = 0.0;   // mean reward of the last 100 episodes
  double peak_q_ratio = 0.0;  // max over epochs of max_abs_q / |Q|max

  bool operator==(const RunSummary&) const = default;
};

/// |Q|max = r_max / (1 - gamma). Throws std::domain_error unless 0 < gamma < 1.
double q_bound(double r_max, double gamma);

/// max_abs_q / bound; values above 1 indicate overestimation.
double q_ratio(double max_abs_q, double bound);
inline bool overestimates(double ratio) { return ratio > 1.0; }

/// Window of a 0-based step: floor(step * 100 / total_steps), clamped to 99.
std::size_t epoch_of_step(std::uint64_t step, std::uint64_t total_steps);

/// Splits the run into 100 equal step windows; each episode counts toward
/// the window holding its final step. `window_max_abs_q` carries the
/// per-window max |Q| (missing entries read as 0).
EpochSeries epoch_aggregate(std::span<const EpisodeRecord> episodes,
                            std::span<const double> window_max_abs_q, std::uint64_t total_steps);

/// Mean reward over the last `last_n` episodes (all of them if fewer).
/// Throws std::invalid_argument for an empty log.
double final_score(std::span<const EpisodeRecord> episodes, std::size_t last_n = 100);

/// Mean with a normal-approximation 95% interval:
///   mean +- 1.96 * s / sqrt(n), s the sample standard deviation (0 for n = 1).
struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;
  double low = 0.0;
  double high = 0.0;
  std::size_t n = 0;
};
MeanCi mean_ci95(std::span<const double> values);

}  // namespace eedqn::metrics
