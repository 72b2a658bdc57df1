// eedqn run      --env breakout --algo dqn,eedqn --seeds 0,1,2 --steps 200000 --out out
// eedqn ablation --env breakout,freeway
// eedqn envs | algos

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "eedqn/agents/config.hpp"
#include "eedqn/envs/environment.hpp"
#include "eedqn/error.hpp"
#include "eedqn/experiment/experiment.hpp"

namespace {

using eedqn::experiment::PlanOptions;

struct Flags {
  std::vector<std::string> envs;
  std::vector<std::string> algos;
  std::vector<std::uint64_t> seeds;
  std::uint64_t steps = 0;
  std::string out;
  std::size_t workers = 0;
  bool paper_scale = false;
  std::string config_file;
};

void add_grid_flags(CLI::App* cmd, Flags& f, bool with_algo) {
  cmd->add_option("--env,--envs", f.envs, "Environments (comma separated)")->delimiter(',');
  if (with_algo) {
    cmd->add_option("--algo,--algos", f.algos,
                    "Algorithms or presets 'baselines' / 'ablation' (comma separated)")
        ->delimiter(',');
  }
  cmd->add_option("--seeds", f.seeds, "Seeds (comma separated)")->delimiter(',');
  cmd->add_option("--steps", f.steps, "Environment steps per run");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--workers", f.workers, "Concurrent runs")->check(CLI::PositiveNumber);
  cmd->add_flag("--paper-scale", f.paper_scale, "10 seeds x 1M steps unless overridden");
  cmd->add_option("--config", f.config_file, "JSON file with defaults; flags take precedence")
      ->check(CLI::ExistingFile);
}

PlanOptions flag_options(const CLI::App* cmd, const Flags& f) {
  PlanOptions o;
  auto given = [cmd](const char* name) { return cmd->count(name) > 0; };
  if (given("--env")) o.envs = f.envs;
  if (cmd->get_option_no_throw("--algo") != nullptr && given("--algo")) o.algos = f.algos;
  if (given("--seeds")) o.seeds = f.seeds;
  if (given("--steps")) o.steps = f.steps;
  if (given("--out")) o.out = f.out;
  if (given("--workers")) o.workers = f.workers;
  if (f.paper_scale) o.paper_scale = true;
  return o;
}

int run_grid(const CLI::App* cmd, const Flags& f, eedqn::experiment::Preset preset) {
  PlanOptions options;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw eedqn::ConfigError(f.config_file + ": " + e.what());
    }
    options = eedqn::experiment::options_from_json(j);
  }
  options = eedqn::experiment::merge_options(std::move(options), flag_options(cmd, f));
  const auto plan = eedqn::experiment::make_plan(options, preset);
  plan.validate();

  std::fprintf(stderr, "running %zu cells (%zu envs x %zu algos x %zu seeds, %llu steps) -> %s\n",
               plan.cells().size(), plan.envs.size(), plan.algos.size(), plan.seeds.size(),
               static_cast<unsigned long long>(plan.total_steps), plan.out_dir.c_str());
  const auto report = eedqn::experiment::run_experiment(plan);
  for (const auto& cell : report.cells) {
    if (cell.ok) {
      std::printf("ok    %s/%s/%llu final_score=%.4f peak_q_ratio=%.4f\n", cell.env.c_str(),
                  cell.algo.c_str(), static_cast<unsigned long long>(cell.seed),
                  cell.summary.final_score, cell.summary.peak_q_ratio);
    } else {
      std::printf("FAIL  %s/%s/%llu %s\n", cell.env.c_str(), cell.algo.c_str(),
                  static_cast<unsigned long long>(cell.seed), cell.error.c_str());
    }
  }
  return report.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic step ensemble DQN experiments"};
  app.require_subcommand(1);

  Flags run_flags, ablation_flags;
  CLI::App* run = app.add_subcommand("run", "Train a grid of env x algo x seed");
  add_grid_flags(run, run_flags, true);
  CLI::App* ablation = app.add_subcommand("ablation", "Train the aggregation ablation grid");
  add_grid_flags(ablation, ablation_flags, false);
  CLI::App* envs = app.add_subcommand("envs", "List environments");
  CLI::App* algos = app.add_subcommand("algos", "List algorithm presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_grid(run, run_flags, eedqn::experiment::Preset::run);
    if (*ablation) return run_grid(ablation, ablation_flags, eedqn::experiment::Preset::ablation);
    if (*envs) {
      for (const auto& name : eedqn::envs::available_environments()) std::puts(name.c_str());
    }
    if (*algos) {
      for (const auto& name : eedqn::agents::algorithm_names()) std::puts(name.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
