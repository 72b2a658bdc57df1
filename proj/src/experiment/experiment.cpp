#include "eedqn/experiment/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <set>
#include <thread>
#include <tuple>

#include "eedqn/agents/trainer.hpp"
#include "eedqn/envs/environment.hpp"
#include "eedqn/error.hpp"
#include "eedqn/tensornet/checkpoint.hpp"

namespace eedqn::experiment {

namespace fs = std::filesystem;

std::vector<Cell> ExperimentPlan::cells() const {
  std::vector<Cell> out;
  for (const std::string& env : envs) {
    for (const agents::AlgoConfig& algo : algos) {
      for (std::uint64_t seed : seeds) out.push_back({env, algo, seed, total_steps});
    }
  }
  return out;
}

void ExperimentPlan::validate() const {
  for (const std::string& env : envs) envs::make_environment(env);
  std::set<std::string> names;
  for (const agents::AlgoConfig& algo : algos) {
    algo.validate();
    if (!names.insert(algo.name).second) throw ConfigError("duplicate algorithm '" + algo.name + "'");
  }
  if (std::set<std::string>(envs.begin(), envs.end()).size() != envs.size()) {
    throw ConfigError("duplicate environment in plan");
  }
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ConfigError("duplicate seed in plan");
  }
  if (workers == 0) throw ConfigError("workers must be >= 1");
}

bool ExperimentReport::all_ok() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellOutcome& c) { return c.ok; });
}

std::vector<metrics::RunSummary> ExperimentReport::summaries() const {
  std::vector<metrics::RunSummary> out;
  for (const CellOutcome& c : cells) {
    if (c.ok) out.push_back(c.summary);
  }
  return out;
}

fs::path cell_dir(const fs::path& out, const Cell& cell) {
  return out / cell.env / cell.algo.name / std::to_string(cell.seed);
}

CellOutcome run_cell(const Cell& cell, const fs::path& out_dir) {
  const fs::path dir = cell_dir(out_dir, cell);
  fs::create_directories(dir);

  const nlohmann::json config = {{"env", cell.env},
                                 {"seed", cell.seed},
                                 {"total_steps", cell.total_steps},
                                 {"algo", agents::to_json(cell.algo)}};
  metrics::write_json(dir / "config.json", config);

  const agents::RunLog log = agents::run_training(cell.algo, cell.env, cell.seed, cell.total_steps);

  {
    std::ofstream episodes(dir / "episodes.csv", std::ios::trunc);
    episodes << "# " << config.dump() << '\n' << "step,episode,episodic_reward\n";
    for (const metrics::EpisodeRecord& e : log.episodes) {
      episodes << e.end_step << ',' << e.episode << ',' << e.reward << '\n';
    }
    if (!episodes) throw std::runtime_error("write failed: " + (dir / "episodes.csv").string());
  }
  if (!log.final_online.empty()) tensornet::save_checkpoint(dir / "checkpoint", log.final_online);

  const double bound = metrics::q_bound(log.r_max, log.gamma);
  const metrics::EpochSeries series =
      metrics::epoch_aggregate(log.episodes, log.window_max_abs_q, log.total_steps);
  CellOutcome outcome;
  outcome.env = cell.env;
  outcome.algo = cell.algo.name;
  outcome.seed = cell.seed;
  outcome.epochs = metrics::epoch_rows(cell.env, cell.algo.name, cell.seed, series, bound);
  metrics::write_epochs_csv(dir / "epochs.csv", outcome.epochs);

  if (log.episodes.empty()) {
    throw std::runtime_error("no episode finished within " + std::to_string(cell.total_steps) +
                             " steps");
  }
  double peak = 0.0;
  for (const metrics::EpochRow& row : outcome.epochs) peak = std::max(peak, row.q_ratio);
  outcome.summary = {cell.env, cell.algo.name, cell.seed, metrics::final_score(log.episodes), peak};
  outcome.ok = true;
  return outcome;
}

ExperimentReport run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  const std::vector<Cell> cells = plan.cells();
  ExperimentReport report;
  report.cells.resize(cells.size());

  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::max<std::size_t>(1, std::min(plan.workers, cells.size()));
  const int omp_threads = std::max(1, omp_get_max_threads() / static_cast<int>(workers));
  auto worker = [&] {
    omp_set_num_threads(omp_threads);
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        report.cells[i] = run_cell(cells[i], plan.out_dir);
      } catch (const std::exception& e) {
        CellOutcome failed;
        failed.env = cells[i].env;
        failed.algo = cells[i].algo.name;
        failed.seed = cells[i].seed;
        failed.error = e.what();
        report.cells[i] = std::move(failed);
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<metrics::EpochRow> epochs;
  for (const CellOutcome& c : report.cells) {
    if (c.ok) epochs.insert(epochs.end(), c.epochs.begin(), c.epochs.end());
  }
  metrics::export_results(plan.out_dir, report.summaries(), epochs);
  return report;
}

std::vector<std::string> ablation_algorithms() {
  return {"esdqn",      "eedqn",         "variant_eedqn", "min_eedqn",
          "mean_eedqn", "convex1_eedqn", "convex2_eedqn", "convex3_eedqn"};
}

std::vector<std::string> baseline_algorithms() {
  return {"dqn", "ddqn", "avgdqn", "maxmin", "esdqn", "eedqn"};
}

std::vector<agents::AlgoConfig> resolve_algorithms(const std::vector<std::string>& names,
                                                   const nlohmann::json& overrides) {
  std::vector<std::string> expanded;
  for (const std::string& name : names) {
    if (name == "ablation") {
      for (auto& n : ablation_algorithms()) expanded.push_back(n);
    } else if (name == "baselines") {
      for (auto& n : baseline_algorithms()) expanded.push_back(n);
    } else {
      expanded.push_back(name);
    }
  }
  std::vector<agents::AlgoConfig> out;
  for (const std::string& name : expanded) {
    if (std::any_of(out.begin(), out.end(), [&](const auto& c) { return c.name == name; })) continue;
    agents::AlgoConfig config = agents::make_algorithm(name);
    if (!overrides.is_null() && !overrides.empty()) {
      config = agents::apply_overrides(std::move(config), overrides);
      config.name = name;
    }
    out.push_back(std::move(config));
  }
  return out;
}

PlanOptions options_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  PlanOptions o;
  auto strings = [](const nlohmann::json& v) {
    return v.is_string() ? std::vector<std::string>{v.get<std::string>()}
                         : v.get<std::vector<std::string>>();
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "env" || key == "envs") o.envs = strings(v);
      else if (key == "algo" || key == "algos") o.algos = strings(v);
      else if (key == "seeds") o.seeds = v.get<std::vector<std::uint64_t>>();
      else if (key == "steps") o.steps = v.get<std::uint64_t>();
      else if (key == "out") o.out = v.get<std::string>();
      else if (key == "workers") o.workers = v.get<std::size_t>();
      else if (key == "paper_scale") o.paper_scale = v.get<bool>();
      else if (key == "algo_overrides") o.algo_overrides = v;
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config file: ") + e.what());
  }
  return o;
}

PlanOptions merge_options(PlanOptions base, const PlanOptions& top) {
  if (top.envs) base.envs = top.envs;
  if (top.algos) base.algos = top.algos;
  if (top.seeds) base.seeds = top.seeds;
  if (top.steps) base.steps = top.steps;
  if (top.out) base.out = top.out;
  if (top.workers) base.workers = top.workers;
  if (top.paper_scale) base.paper_scale = top.paper_scale;
  if (top.algo_overrides) base.algo_overrides = top.algo_overrides;
  return base;
}

ExperimentPlan make_plan(const PlanOptions& o, Preset preset) {
  const bool paper = o.paper_scale.value_or(false);
  std::vector<std::uint64_t> default_seeds(paper ? 10 : 3);
  std::iota(default_seeds.begin(), default_seeds.end(), 0);

  ExperimentPlan plan;
  plan.envs = o.envs.value_or(std::vector<std::string>{"breakout"});
  std::vector<std::string> algos = preset == Preset::ablation
                                       ? std::vector<std::string>{"ablation"}
                                       : o.algos.value_or(std::vector<std::string>{"dqn", "eedqn"});
  if (preset == Preset::ablation && o.algos) {
    throw ConfigError("the ablation preset fixes its algorithms; drop --algo");
  }
  plan.algos = resolve_algorithms(algos, o.algo_overrides.value_or(nlohmann::json{}));
  plan.seeds = o.seeds.value_or(default_seeds);
  plan.total_steps = o.steps.value_or(paper ? 1'000'000 : 200'000);
  plan.out_dir = o.out.value_or("out");
  plan.workers = o.workers.value_or(1);
  return plan;
}

}  // namespace eedqn::experiment
