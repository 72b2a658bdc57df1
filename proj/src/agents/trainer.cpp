#include "eedqn/agents/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "eedqn/agents/collectors.hpp"
#include "eedqn/buffers/diff_buffer.hpp"
#include "eedqn/buffers/replay_buffer.hpp"
#include "eedqn/error.hpp"

namespace eedqn::agents {
namespace {

// Seed streams derived from the run seed.
enum Stream : std::uint64_t { kInit = 1, kAct = 2, kSample = 3, kEpisodes = 4, kPrefill = 5 };

class Run {
 public:
  Run(const AlgoConfig& config, const std::string& env_name, std::uint64_t seed,
      std::uint64_t total_steps)
      : cfg_(config),
        env_(envs::make_environment(env_name)),
        ensemble_(tensornet::Topology{env_->spec().shape.size(), config.hidden,
                                      env_->spec().action_count},
                  config.ensemble_size,
                  {config.learning_rate, config.adam_beta1, config.adam_beta2, config.adam_epsilon},
                  mix_seed(seed, kInit)),
        replay_(config.replay_capacity),
        act_rng_(mix_seed(seed, kAct)),
        sample_rng_(mix_seed(seed, kSample)),
        episode_rng_(mix_seed(seed, kEpisodes)),
        nstep_(config.step_mode == StepMode::fixed_n ? config.n_step : 1, config.gamma) {
    if (cfg_.step_mode == StepMode::elastic) diffs_.emplace(cfg_.diff_capacity, cfg_.diff_std);
    log_.env = env_name;
    log_.algo = cfg_.name;
    log_.seed = seed;
    log_.total_steps = total_steps;
    log_.r_max = env_->spec().r_max;
    log_.gamma = cfg_.gamma;
  }

  RunLog execute(const StepObserver& observer) {
    if (log_.total_steps == 0) return std::move(log_);
    log_.window_max_abs_q.assign(metrics::kEpochCount, 0.0);
    prefill(mix_seed(log_.seed, kPrefill));
    train(observer);
    log_.final_online.assign(ensemble_.online().begin(), ensemble_.online().end());
    return std::move(log_);
  }

 private:
  double diff(const envs::Observation& a, const envs::Observation& b) const {
    return state_value_diff(ensemble_.targets(), a, b, cfg_.value_scalarization, cfg_.backend);
  }

  // Uniform-random single-step experience; also seeds the diff buffer.
  void prefill(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, env_->spec().action_count - 1);
    envs::Observation s = env_->reset(rng());
    std::size_t episode_steps = 0;
    for (std::size_t i = 0; i < cfg_.prefill_steps; ++i) {
      const std::size_t a = pick(rng);
      envs::StepResult r = env_->step(a);
      ++episode_steps;
      if (diffs_) diffs_->push(diff(s, r.next));
      replay_.push({s, a, r.reward, r.next, 0, r.terminal});
      if (r.terminal || episode_steps >= cfg_.max_episode_steps) {
        s = env_->reset(rng());
        episode_steps = 0;
      } else {
        s = std::move(r.next);
      }
    }
  }

  void store(std::optional<buffers::Transition> t) {
    if (!t) return;
    ++log_.stored_transitions;
    if (t->multi_step()) ++log_.multi_step_transitions;
    replay_.push(std::move(*t));
  }

  void train(const StepObserver& observer) {
    envs::Observation s = env_->reset(episode_rng_());
    ElasticState segment;
    std::size_t episode_steps = 0;
    double episode_reward = 0.0;
    std::uint64_t episode_index = 0;
    std::uint64_t opportunities = 0;

    for (std::uint64_t t = 0; t < log_.total_steps; ++t) {
      const std::size_t window = metrics::epoch_of_step(t, log_.total_steps);
      StepEvent event{t, false, false, cfg_.exploration.at(t)};

      const ActionChoice choice = select_action(s, event.epsilon, ensemble_, act_rng_, cfg_.backend);
      if (cfg_.q_stat == QStatSource::acting) {
        event.max_abs_q = std::abs(choice.greedy_value);
        double& peak = log_.window_max_abs_q[window];
        peak = std::max(peak, event.max_abs_q);
      }

      envs::StepResult result = env_->step(choice.action);
      ++episode_steps;
      episode_reward += result.reward;
      const bool truncated = !result.terminal && episode_steps >= cfg_.max_episode_steps;
      const StepOutcome outcome{&s, choice.action, result.reward, &result.next, result.terminal,
                                truncated};

      if (cfg_.step_mode == StepMode::elastic) {
        const double z = diff(segment.open ? segment.start : s, result.next);
        const double h = buffers::push_diff_and_threshold(*diffs_, z);
        store(elastic_step(segment, outcome, z, h, cfg_.gamma));
      } else {
        for (buffers::Transition& tr : nstep_.observe(outcome)) store(std::move(tr));
      }

      if ((t + 1) % cfg_.update_frequency == 0 && replay_.size() >= cfg_.batch_size) {
        const auto batch = replay_.sample(cfg_.batch_size, sample_rng_);
        const LearnStats stats =
            learn_step(ensemble_, batch, cfg_.aggregation, cfg_.gamma, cfg_.backend);
        ++log_.learn_updates;
        event.learned = true;
        if (cfg_.q_stat == QStatSource::training) {
          event.max_abs_q = stats.max_abs_q;
          double& peak = log_.window_max_abs_q[window];
          peak = std::max(peak, event.max_abs_q);
        }
        if (++opportunities % cfg_.target_update_interval == 0) {
          ensemble_.sync_targets();
          ++log_.target_syncs;
          event.synced = true;
        }
      }

      if (result.terminal || truncated) {
        log_.episodes.push_back({t, episode_index++, episode_reward});
        episode_reward = 0.0;
        episode_steps = 0;
        segment = {};
        s = env_->reset(episode_rng_());
      } else {
        s = std::move(result.next);
      }
      if (observer) observer(event, ensemble_);
    }
  }

  AlgoConfig cfg_;
  std::unique_ptr<envs::Environment> env_;
  Ensemble ensemble_;
  buffers::ReplayBuffer replay_;
  std::optional<buffers::DiffBuffer> diffs_;
  std::mt19937_64 act_rng_;
  std::mt19937_64 sample_rng_;
  std::mt19937_64 episode_rng_;
  NStepCollector nstep_;
  RunLog log_;
};

}  // namespace

RunLog run_training(const AlgoConfig& config, const std::string& env_name, std::uint64_t seed,
                    std::uint64_t total_steps, const StepObserver& observer) {
  config.validate();
  Run run(config, env_name, seed, total_steps);
  return run.execute(observer);
}

}  // namespace eedqn::agents
