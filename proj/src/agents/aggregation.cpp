#include "eedqn/agents/aggregation.hpp"

#include <algorithm>
#include <cstdio>

#include "eedqn/error.hpp"

namespace eedqn::agents {

std::string AggregationMode::name() const {
  switch (kind) {
    case AggregationKind::eedqn: return "eedqn";
    case AggregationKind::variant_eedqn: return "variant_eedqn";
    case AggregationKind::min_all: return "min_all";
    case AggregationKind::avg_all: return "avg_all";
    case AggregationKind::convex: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "convex:%g", lambda);
      return buf;
    }
    case AggregationKind::single_net: return "single_net";
    case AggregationKind::double_select: return "double_select";
    case AggregationKind::maxmin_all: return "maxmin_all";
  }
  return "?";
}

void AggregationMode::validate() const {
  if (kind == AggregationKind::convex && !(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("convex aggregation needs lambda in [0, 1]");
  }
}

AggregationMode parse_aggregation(const std::string& name) {
  if (name == "eedqn") return {AggregationKind::eedqn};
  if (name == "variant_eedqn") return {AggregationKind::variant_eedqn};
  if (name == "min_all") return {AggregationKind::min_all};
  if (name == "avg_all") return {AggregationKind::avg_all};
  if (name == "single_net") return {AggregationKind::single_net};
  if (name == "double_select") return {AggregationKind::double_select};
  if (name == "maxmin_all") return {AggregationKind::maxmin_all};
  if (name.starts_with("convex:")) {
    try {
      std::size_t used = 0;
      const double lambda = std::stod(name.substr(7), &used);
      if (used + 7 == name.size()) {
        AggregationMode mode = AggregationMode::convex_blend(lambda);
        mode.validate();
        return mode;
      }
    } catch (const std::logic_error&) {
    }
  }
  throw ConfigError("unknown aggregation mode '" + name + "'");
}

std::vector<double> combine_members(std::span<const std::span<const double>> member_rows,
                                    Combine how) {
  if (member_rows.empty()) throw ConfigError("aggregation over an empty ensemble");
  const std::size_t actions = member_rows.front().size();
  std::vector<double> out(member_rows.front().begin(), member_rows.front().end());
  for (std::size_t i = 1; i < member_rows.size(); ++i) {
    for (std::size_t a = 0; a < actions; ++a) {
      out[a] = how == Combine::min ? std::min(out[a], member_rows[i][a]) : out[a] + member_rows[i][a];
    }
  }
  if (how == Combine::avg) {
    const auto n = static_cast<double>(member_rows.size());
    for (double& v : out) v /= n;
  }
  return out;
}

std::vector<double> aggregate_values(const AggregationMode& mode, bool multi_step,
                                     std::span<const std::span<const double>> target_rows) {
  switch (mode.kind) {
    case AggregationKind::eedqn:
      return combine_members(target_rows, multi_step ? Combine::min : Combine::avg);
    case AggregationKind::variant_eedqn:
      return combine_members(target_rows, multi_step ? Combine::avg : Combine::min);
    case AggregationKind::min_all:
    case AggregationKind::maxmin_all:
      return combine_members(target_rows, Combine::min);
    case AggregationKind::avg_all:
    case AggregationKind::single_net:
    case AggregationKind::double_select:
      return combine_members(target_rows, Combine::avg);
    case AggregationKind::convex: {
      const std::vector<double> lo = combine_members(target_rows, Combine::min);
      std::vector<double> out = combine_members(target_rows, Combine::avg);
      for (std::size_t a = 0; a < out.size(); ++a) {
        out[a] = mode.lambda * out[a] + (1.0 - mode.lambda) * lo[a];
      }
      return out;
    }
  }
  throw ConfigError("unhandled aggregation mode");
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t a = 1; a < values.size(); ++a) {
    if (values[a] > values[best]) best = a;
  }
  return best;
}

double bootstrap_value(const AggregationMode& mode, bool multi_step,
                       std::span<const std::span<const double>> target_rows,
                       std::span<const std::span<const double>> online_rows) {
  if (mode.kind == AggregationKind::double_select) {
    const std::size_t a = argmax(combine_members(online_rows, Combine::avg));
    return combine_members(target_rows, Combine::avg)[a];
  }
  const std::vector<double> agg = aggregate_values(mode, multi_step, target_rows);
  return *std::max_element(agg.begin(), agg.end());
}

}  // namespace eedqn::agents
