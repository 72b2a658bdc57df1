#include "eedqn/agents/collectors.hpp"

#include <cmath>

#include "eedqn/error.hpp"

namespace eedqn::agents {

std::optional<buffers::Transition> elastic_step(ElasticState& state, const StepOutcome& outcome,
                                                double z, double h, double gamma) {
  if (!state.open) {
    state.open = true;
    state.start = *outcome.state;
    state.action = outcome.action;
    state.reward = 0.0;
    state.extra_steps = 0;
  }
  state.reward += std::pow(gamma, static_cast<double>(state.extra_steps)) * outcome.reward;

  if (z > h || outcome.terminal || outcome.truncated) {
    state.open = false;
    return buffers::Transition{std::move(state.start), state.action,      state.reward,
                               *outcome.next,          state.extra_steps, outcome.terminal};
  }
  ++state.extra_steps;
  return std::nullopt;
}

NStepCollector::NStepCollector(std::size_t n, double gamma) : n_(n), gamma_(gamma) {
  if (n == 0) throw ConfigError("n-step collector needs n >= 1");
}

std::vector<buffers::Transition> NStepCollector::observe(const StepOutcome& outcome) {
  window_.push_back({*outcome.state, outcome.action, 0.0, 0});
  for (Pending& p : window_) {
    p.reward += std::pow(gamma_, static_cast<double>(p.steps)) * outcome.reward;
    ++p.steps;
  }

  std::vector<buffers::Transition> out;
  auto emit = [&](Pending& p) {
    out.push_back({std::move(p.start), p.action, p.reward, *outcome.next, p.steps - 1,
                   outcome.terminal});
  };
  if (outcome.terminal || outcome.truncated) {
    for (Pending& p : window_) emit(p);
    window_.clear();
  } else if (window_.front().steps == n_) {
    emit(window_.front());
    window_.pop_front();
  }
  return out;
}

}  // namespace eedqn::agents
