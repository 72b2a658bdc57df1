#include "eedqn/agents/config.hpp"

#include <algorithm>

#include "eedqn/error.hpp"

namespace eedqn::agents {

double ExplorationSchedule::at(std::uint64_t step) const noexcept {
  if (decay_steps == 0 || step >= decay_steps) return floor;
  const double frac = static_cast<double>(step) / static_cast<double>(decay_steps);
  return std::max(floor, start - (start - floor) * frac);
}

void AlgoConfig::validate() const {
  aggregation.validate();
  if (ensemble_size == 0) throw ConfigError(name + ": ensemble size must be >= 1");
  if (aggregation.kind == AggregationKind::single_net && ensemble_size != 1) {
    throw ConfigError(name + ": single_net aggregation needs ensemble size 1");
  }
  if (step_mode == StepMode::fixed_n && n_step < 1) throw ConfigError(name + ": n_step must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError(name + ": gamma must be in (0, 1)");
  if (target_update_interval == 0 || update_frequency == 0 || batch_size == 0) {
    throw ConfigError(name + ": intervals and batch size must be positive");
  }
  if (replay_capacity == 0) throw ConfigError(name + ": replay capacity must be positive");
  if (step_mode == StepMode::elastic && diff_capacity == 0) {
    throw ConfigError(name + ": elastic step mode needs a diff buffer capacity");
  }
  if (max_episode_steps == 0) throw ConfigError(name + ": max_episode_steps must be positive");
  if (!(exploration.start >= 0.0 && exploration.start <= 1.0 && exploration.floor >= 0.0 &&
        exploration.floor <= 1.0)) {
    throw ConfigError(name + ": exploration rates must be in [0, 1]");
  }
  if (!(learning_rate > 0.0) || !(adam_epsilon > 0.0)) {
    throw ConfigError(name + ": learning rate and adam epsilon must be positive");
  }
}

AlgoConfig make_algorithm(const std::string& name) {
  AlgoConfig c;
  c.name = name;
  auto ensemble = [&c](AggregationMode mode, StepMode steps) {
    c.aggregation = mode;
    c.ensemble_size = 2;
    c.step_mode = steps;
  };
  using K = AggregationKind;
  if (name == "dqn") {
    // defaults
  } else if (name == "ddqn") {
    c.aggregation = {K::double_select};
  } else if (name == "nstep") {
    c.step_mode = StepMode::fixed_n;
    c.n_step = 3;
  } else if (name == "esdqn") {
    c.step_mode = StepMode::elastic;
  } else if (name == "avgdqn") {
    ensemble({K::avg_all}, StepMode::single);
  } else if (name == "maxmin") {
    ensemble({K::maxmin_all}, StepMode::single);
  } else if (name == "eedqn") {
    ensemble({K::eedqn}, StepMode::elastic);
  } else if (name == "variant_eedqn") {
    ensemble({K::variant_eedqn}, StepMode::elastic);
  } else if (name == "min_eedqn") {
    ensemble({K::min_all}, StepMode::elastic);
  } else if (name == "mean_eedqn") {
    ensemble({K::avg_all}, StepMode::elastic);
  } else if (name == "convex1_eedqn") {
    ensemble(AggregationMode::convex_blend(0.75), StepMode::elastic);
  } else if (name == "convex2_eedqn") {
    ensemble(AggregationMode::convex_blend(0.5), StepMode::elastic);
  } else if (name == "convex3_eedqn") {
    ensemble(AggregationMode::convex_blend(0.25), StepMode::elastic);
  } else {
    throw ConfigError("unknown algorithm '" + name + "'");
  }
  return c;
}

std::vector<std::string> algorithm_names() {
  return {"dqn",       "ddqn",          "avgdqn",        "maxmin",        "nstep",
          "esdqn",     "eedqn",         "variant_eedqn", "min_eedqn",     "mean_eedqn",
          "convex1_eedqn", "convex2_eedqn", "convex3_eedqn"};
}

namespace {

std::string step_mode_name(StepMode m) {
  switch (m) {
    case StepMode::single: return "single";
    case StepMode::fixed_n: return "fixed_n";
    case StepMode::elastic: return "elastic";
  }
  return "?";
}

StepMode parse_step_mode(const std::string& s) {
  if (s == "single") return StepMode::single;
  if (s == "fixed_n") return StepMode::fixed_n;
  if (s == "elastic") return StepMode::elastic;
  throw ConfigError("unknown step mode '" + s + "'");
}

}  // namespace

nlohmann::json to_json(const AlgoConfig& c) {
  return {
      {"name", c.name},
      {"aggregation", c.aggregation.name()},
      {"ensemble_size", c.ensemble_size},
      {"step_mode", step_mode_name(c.step_mode)},
      {"n_step", c.n_step},
      {"gamma", c.gamma},
      {"target_update_interval", c.target_update_interval},
      {"update_frequency", c.update_frequency},
      {"batch_size", c.batch_size},
      {"exploration_start", c.exploration.start},
      {"exploration_floor", c.exploration.floor},
      {"exploration_decay_steps", c.exploration.decay_steps},
      {"replay_capacity", c.replay_capacity},
      {"diff_capacity", c.diff_capacity},
      {"prefill_steps", c.prefill_steps},
      {"max_episode_steps", c.max_episode_steps},
      {"hidden", c.hidden},
      {"learning_rate", c.learning_rate},
      {"adam_beta1", c.adam_beta1},
      {"adam_beta2", c.adam_beta2},
      {"adam_epsilon", c.adam_epsilon},
      {"diff_std", c.diff_std == buffers::StdConvention::population ? "population" : "sample"},
      {"value_scalarization", c.value_scalarization == ValueScalarization::greedy ? "greedy" : "mean"},
      {"q_stat", c.q_stat == QStatSource::acting ? "acting" : "training"},
      {"backend", std::string(tensornet::to_string(c.backend))},
  };
}

AlgoConfig apply_overrides(AlgoConfig c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("algorithm overrides must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "name") c.name = value.get<std::string>();
      else if (key == "aggregation") c.aggregation = parse_aggregation(value.get<std::string>());
      else if (key == "ensemble_size") c.ensemble_size = value.get<std::size_t>();
      else if (key == "step_mode") c.step_mode = parse_step_mode(value.get<std::string>());
      else if (key == "n_step") c.n_step = value.get<std::size_t>();
      else if (key == "gamma") c.gamma = value.get<double>();
      else if (key == "target_update_interval") c.target_update_interval = value.get<std::size_t>();
      else if (key == "update_frequency") c.update_frequency = value.get<std::size_t>();
      else if (key == "batch_size") c.batch_size = value.get<std::size_t>();
      else if (key == "exploration_start") c.exploration.start = value.get<double>();
      else if (key == "exploration_floor") c.exploration.floor = value.get<double>();
      else if (key == "exploration_decay_steps") c.exploration.decay_steps = value.get<std::uint64_t>();
      else if (key == "replay_capacity") c.replay_capacity = value.get<std::size_t>();
      else if (key == "diff_capacity") c.diff_capacity = value.get<std::size_t>();
      else if (key == "prefill_steps") c.prefill_steps = value.get<std::size_t>();
      else if (key == "max_episode_steps") c.max_episode_steps = value.get<std::size_t>();
      else if (key == "hidden") c.hidden = value.get<std::vector<std::size_t>>();
      else if (key == "learning_rate") c.learning_rate = value.get<double>();
      else if (key == "adam_beta1") c.adam_beta1 = value.get<double>();
      else if (key == "adam_beta2") c.adam_beta2 = value.get<double>();
      else if (key == "adam_epsilon") c.adam_epsilon = value.get<double>();
      else if (key == "diff_std") {
        const auto s = value.get<std::string>();
        if (s != "population" && s != "sample") throw ConfigError("diff_std must be population|sample");
        c.diff_std = s == "population" ? buffers::StdConvention::population : buffers::StdConvention::sample;
      } else if (key == "value_scalarization") {
        const auto s = value.get<std::string>();
        if (s != "greedy" && s != "mean") throw ConfigError("value_scalarization must be greedy|mean");
        c.value_scalarization = s == "greedy" ? ValueScalarization::greedy : ValueScalarization::mean;
      } else if (key == "q_stat") {
        const auto s = value.get<std::string>();
        if (s != "acting" && s != "training") throw ConfigError("q_stat must be acting|training");
        c.q_stat = s == "acting" ? QStatSource::acting : QStatSource::training;
      } else if (key == "backend") c.backend = tensornet::parse_backend(value.get<std::string>());
      else throw ConfigError("unknown algorithm setting '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad value for '" + key + "': " + e.what());
    }
  }
  return c;
}

}  // namespace eedqn::agents
