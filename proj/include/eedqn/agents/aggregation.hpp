#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace eedqn::agents {

/// How the ensemble's per-action target values are combined before the
/// bootstrap max.
enum class AggregationKind {
  eedqn,          // min for multi-step segments, average for single-step
  variant_eedqn,  // average for multi-step, min for single-step
  min_all,        // min for every experience
  avg_all,        // average for every experience
  convex,         // lambda * average + (1 - lambda) * min for every experience
  single_net,     // one network; plain max over its values
  double_select,  // online ensemble picks the action, target ensemble evaluates it
  maxmin_all,     // min over the ensemble (Maxmin DQN)
};

struct AggregationMode {
  AggregationKind kind = AggregationKind::single_net;
  double lambda = 0.5;  // only read for convex

  static AggregationMode convex_blend(double lambda) { return {AggregationKind::convex, lambda}; }

  std::string name() const;
  /// Throws ConfigError for lambda outside [0, 1].
  void validate() const;

  bool operator==(const AggregationMode&) const = default;
};

AggregationMode parse_aggregation(const std::string& name);

/// Per-action combination of one state's member rows (each of length |A|).
enum class Combine { min, avg };
std::vector<double> combine_members(std::span<const std::span<const double>> member_rows,
                                    Combine how);

/// Per-action aggregate the mode applies to a target row set for a segment
/// of the given kind. Not meaningful for double_select.
std::vector<double> aggregate_values(const AggregationMode& mode, bool multi_step,
                                     std::span<const std::span<const double>> target_rows);

/// Bootstrap value of the next state: max over actions of the aggregate,
/// or for double_select the target average at the online-average argmax.
/// Argmax ties resolve to the lowest action index.
double bootstrap_value(const AggregationMode& mode, bool multi_step,
                       std::span<const std::span<const double>> target_rows,
                       std::span<const std::span<const double>> online_rows);

/// Index of the largest value, lowest index on ties.
std::size_t argmax(std::span<const double> values);

}  // namespace eedqn::agents
