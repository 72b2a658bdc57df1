#pragma once

// Experiment grid driver. Output layout:
//   <out>/<env>/<algo>/<seed>/{epochs.csv, episodes.csv, config.json, checkpoint}
//   <out>/results.csv, <out>/summary.json

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eedqn/agents/config.hpp"
#include "eedqn/metrics/export.hpp"
#include "json.hpp"

namespace eedqn::experiment {

struct Cell {
  std::string env;
  agents::AlgoConfig algo;
  std::uint64_t seed = 0;
  std::uint64_t total_steps = 0;
};

struct ExperimentPlan {
  std::vector<std::string> envs;
  std::vector<agents::AlgoConfig> algos;
  std::vector<std::uint64_t> seeds;
  std::uint64_t total_steps = 0;
  std::filesystem::path out_dir = "out";
  std::size_t workers = 1;

  std::vector<Cell> cells() const;
  /// Rejects unknown environments, invalid algorithm configs and duplicate
  /// (env, algo, seed) cells. Runs before any cell starts.
  void validate() const;
};

struct CellOutcome {
  std::string env;
  std::string algo;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  metrics::RunSummary summary;
  std::vector<metrics::EpochRow> epochs;
};

struct ExperimentReport {
  std::vector<CellOutcome> cells;  // in plan order
  bool all_ok() const;
  std::vector<metrics::RunSummary> summaries() const;
};

std::filesystem::path cell_dir(const std::filesystem::path& out, const Cell& cell);

/// Trains one cell and writes its directory. Throws on failure.
CellOutcome run_cell(const Cell& cell, const std::filesystem::path& out_dir);

/// Runs every cell on up to `workers` threads; a failing cell is reported
/// and the rest continue. Writes results.csv and summary.json at the end.
ExperimentReport run_experiment(const ExperimentPlan& plan);

/// The eight aggregation variants compared in the ablation:
/// esdqn, eedqn, variant_eedqn, min_eedqn, mean_eedqn, convex1..3_eedqn.
std::vector<std::string> ablation_algorithms();
/// Baselines compared against EEDQN: dqn, ddqn, avgdqn, maxmin, esdqn, eedqn.
std::vector<std::string> baseline_algorithms();

/// Expands names and the preset words "ablation" / "baselines".
std::vector<agents::AlgoConfig> resolve_algorithms(const std::vector<std::string>& names,
                                                   const nlohmann::json& overrides = {});

/// User-facing options; unset fields fall back to the next layer
/// (flags > config file > preset defaults).
struct PlanOptions {
  std::optional<std::vector<std::string>> envs;
  std::optional<std::vector<std::string>> algos;
  std::optional<std::vector<std::uint64_t>> seeds;
  std::optional<std::uint64_t> steps;
  std::optional<std::string> out;
  std::optional<std::size_t> workers;
  std::optional<bool> paper_scale;
  std::optional<nlohmann::json> algo_overrides;
};

PlanOptions options_from_json(const nlohmann::json& j);
/// Fields set in `top` win over `base`.
PlanOptions merge_options(PlanOptions base, const PlanOptions& top);

enum class Preset { run, ablation };

/// Desk-scale defaults: 3 seeds x 200k steps; paper scale: 10 seeds x 1M.
ExperimentPlan make_plan(const PlanOptions& options, Preset preset = Preset::run);

}  // namespace eedqn::experiment
