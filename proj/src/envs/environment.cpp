#include "eedqn/envs/environment.hpp"

#include <charconv>
#include <string>

#include "eedqn/envs/chain.hpp"
#include "eedqn/envs/minatar.hpp"
#include "eedqn/error.hpp"

namespace eedqn::envs {

Observation Environment::reset(std::uint64_t seed) {
  do_reset(seed);
  terminal_ = false;
  return observe();
}

StepResult Environment::step(std::size_t action) {
  if (terminal_) throw UsageError(spec().name + ": step() on a finished episode; call reset()");
  if (action >= spec().action_count) {
    throw UsageError(spec().name + ": action " + std::to_string(action) + " out of range");
  }
  const auto [reward, terminal] = do_step(action);
  terminal_ = terminal;
  return {observe(), reward, terminal};
}

namespace {

std::size_t parse_chain_length(std::string_view name) {
  const std::string_view digits = name.substr(6);
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw ConfigError("bad chain environment name '" + std::string(name) + "'");
  }
  return n;
}

}  // namespace

std::unique_ptr<Environment> make_environment(std::string_view name) {
  if (name == "breakout") return std::make_unique<Breakout>();
  if (name == "freeway") return std::make_unique<Freeway>();
  if (name == "asterix") return std::make_unique<Asterix>();
  if (name == "space_invaders") return std::make_unique<SpaceInvaders>();
  if (name.starts_with("chain:")) return std::make_unique<ChainMdp>(parse_chain_length(name));
  throw ConfigError("unknown environment '" + std::string(name) + "'");
}

EnvSpec environment_spec(std::string_view name) { return make_environment(name)->spec(); }

std::vector<std::string> available_environments() {
  return {"breakout", "freeway", "asterix", "space_invaders", "chain:<n>"};
}

}  // namespace eedqn::envs
