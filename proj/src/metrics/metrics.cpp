#include "eedqn/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eedqn::metrics {

double q_bound(double r_max, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::domain_error("q_bound: gamma must be in (0, 1)");
  return r_max / (1.0 - gamma);
}

double q_ratio(double max_abs_q, double bound) {
  if (!(bound > 0.0)) throw std::domain_error("q_ratio: bound must be positive");
  return max_abs_q / bound;
}

std::size_t epoch_of_step(std::uint64_t step, std::uint64_t total_steps) {
  if (total_steps == 0) return 0;
  const auto w = static_cast<std::size_t>((static_cast<unsigned __int128>(step) * kEpochCount) /
                                          total_steps);
  return std::min(w, kEpochCount - 1);
}

EpochSeries epoch_aggregate(std::span<const EpisodeRecord> episodes,
                            std::span<const double> window_max_abs_q, std::uint64_t total_steps) {
  EpochSeries series;
  if (episodes.empty()) {
    series.empty_log = true;
    return series;
  }
  // Rewards are summed in sorted order so a window's mean does not depend on
  // the order its episodes are listed in.
  std::vector<std::vector<double>> rewards(kEpochCount);
  for (const EpisodeRecord& e : episodes) rewards[epoch_of_step(e.end_step, total_steps)].push_back(e.reward);
  std::vector<double> sums(kEpochCount, 0.0);
  std::vector<std::size_t> counts(kEpochCount, 0);
  for (std::size_t w = 0; w < kEpochCount; ++w) {
    std::sort(rewards[w].begin(), rewards[w].end());
    for (double r : rewards[w]) sums[w] += r;
    counts[w] = rewards[w].size();
  }
  series.epochs.resize(kEpochCount);
  double previous = 0.0;
  for (std::size_t w = 0; w < kEpochCount; ++w) {
    EpochStats& s = series.epochs[w];
    s.epoch = w;
    s.episode_count = counts[w];
    s.max_abs_q = w < window_max_abs_q.size() ? window_max_abs_q[w] : 0.0;
    if (counts[w] == 0) {
      s.carried_forward = true;
      s.mean_reward = previous;
    } else {
      s.mean_reward = sums[w] / static_cast<double>(counts[w]);
      previous = s.mean_reward;
    }
  }
  return series;
}

double final_score(std::span<const EpisodeRecord> episodes, std::size_t last_n) {
  if (episodes.empty()) throw std::invalid_argument("final_score: no finished episodes");
  const std::size_t n = std::min(last_n, episodes.size());
  double sum = 0.0;
  for (std::size_t i = episodes.size() - n; i < episodes.size(); ++i) sum += episodes[i].reward;
  return sum / static_cast<double>(n);
}

MeanCi mean_ci95(std::span<const double> values) {
  MeanCi ci;
  ci.n = values.size();
  if (values.empty()) return ci;
  double sum = 0.0;
  for (double v : values) sum += v;
  ci.mean = sum / static_cast<double>(ci.n);
  if (ci.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - ci.mean) * (v - ci.mean);
    const double sd = std::sqrt(ss / static_cast<double>(ci.n - 1));
    ci.half_width = 1.96 * sd / std::sqrt(static_cast<double>(ci.n));
  }
  ci.low = ci.mean - ci.half_width;
  ci.high = ci.mean + ci.half_width;
  return ci;
}

}  // namespace eedqn::metrics
