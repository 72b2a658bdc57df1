#include <algorithm>

#include "eedqn/envs/environment.hpp"
#include "eedqn/error.hpp"

namespace eedqn::envs {

std::size_t Observation::count(std::size_t c) const {
  std::size_t n = 0;
  for (std::size_t i = c; i < cells_.size(); i += shape_.channels) n += cells_[i];
  return n;
}

void Observation::flatten_into(std::span<double> out) const {
  if (out.size() != cells_.size()) throw ConfigError("observation: flatten target has wrong size");
  std::transform(cells_.begin(), cells_.end(), out.begin(),
                 [](std::uint8_t v) { return static_cast<double>(v); });
}

std::vector<double> Observation::flatten() const {
  std::vector<double> out(cells_.size());
  flatten_into(out);
  return out;
}

}  // namespace eedqn::envs
