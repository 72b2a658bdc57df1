#pragma once

// Result files:
//   results.csv   env,algo,seed,final_score,peak_q_ratio
//   epochs.csv    env,algo,seed,epoch,mean_reward,max_abs_q,q_ratio
//   summary.json  per (env, algo): final-score and peak-ratio mean/CI,
//                 per-epoch mean/CI curves, and permutation p-values of
//                 every algorithm's final scores against a reference
//                 algorithm in the same environment.
// Reals are written with 17 significant digits so they parse back exactly.

#include <filesystem>
#include <string>
#include <vector>

#include "eedqn/metrics/metrics.hpp"
#include "json.hpp"

namespace eedqn::metrics {

struct EpochRow {
  std::string env;
  std::string algo;
  std::uint64_t seed = 0;
  std::size_t epoch = 0;
  double mean_reward = 0.0;
  double max_abs_q = 0.0;
  double q_ratio = 0.0;

  bool operator==(const EpochRow&) const = default;
};

/// Rows for one run; q_ratio uses `bound` = |Q|max of the environment.
std::vector<EpochRow> epoch_rows(const std::string& env, const std::string& algo,
                                 std::uint64_t seed, const EpochSeries& series, double bound);

/// Sorted by (env, algo, seed).
void sort_summaries(std::vector<RunSummary>& rows);

void write_results_csv(const std::filesystem::path& path, std::vector<RunSummary> rows);
std::vector<RunSummary> read_results_csv(const std::filesystem::path& path);

void write_epochs_csv(const std::filesystem::path& path, const std::vector<EpochRow>& rows);
std::vector<EpochRow> read_epochs_csv(const std::filesystem::path& path);

struct SummaryOptions {
  std::string reference_algo = "eedqn";
  std::size_t n_permutations = 100'000;
  std::uint64_t seed = 0;
};

nlohmann::json build_summary(std::vector<RunSummary> runs, const std::vector<EpochRow>& epochs,
                             const SummaryOptions& options = {});
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

/// Writes results.csv and summary.json into `dir`.
void export_results(const std::filesystem::path& dir, const std::vector<RunSummary>& runs,
                    const std::vector<EpochRow>& epochs, const SummaryOptions& options = {});

}  // namespace eedqn::metrics
