#include <gtest/gtest.h>

#include <random>

#include "eedqn/agents/aggregation.hpp"
#include "eedqn/error.hpp"

namespace eedqn::agents {
namespace {

using Rows = std::vector<std::span<const double>>;

TEST(Aggregation, NamesRoundTrip) {
  for (const char* name : {"eedqn", "variant_eedqn", "min_all", "avg_all", "single_net",
                           "double_select", "maxmin_all", "convex:0.25", "convex:1"}) {
    EXPECT_EQ(parse_aggregation(name).name(), name);
  }
  EXPECT_EQ(parse_aggregation("convex:0.75"), AggregationMode::convex_blend(0.75));
  EXPECT_THROW(parse_aggregation("median"), ConfigError);
  EXPECT_THROW(parse_aggregation("convex:"), ConfigError);
  EXPECT_THROW(parse_aggregation("convex:0.5x"), ConfigError);
  EXPECT_THROW(parse_aggregation("convex:1.5"), ConfigError);
  EXPECT_THROW(AggregationMode::convex_blend(-0.1).validate(), ConfigError);
}

TEST(Aggregation, ConvexBlendOfMinAndAverage) {
  // Members chosen so min = [1, 3] and avg = [2, 4].
  const std::vector<double> a{1.0, 3.0}, b{3.0, 5.0};
  const Rows pair{a, b};
  EXPECT_EQ(combine_members(pair, Combine::min), (std::vector<double>{1.0, 3.0}));
  EXPECT_EQ(combine_members(pair, Combine::avg), (std::vector<double>{2.0, 4.0}));
  const auto mode = AggregationMode::convex_blend(0.5);
  EXPECT_EQ(aggregate_values(mode, true, pair), (std::vector<double>{1.5, 3.5}));
  EXPECT_EQ(bootstrap_value(mode, false, pair, pair), 3.5);
}

TEST(Aggregation, EedqnSwitchesOnSegmentKind) {
  const std::vector<double> a{5.0, 7.0}, b{6.0, 5.0};
  const Rows rows{a, b};
  const AggregationMode eedqn{AggregationKind::eedqn};
  const AggregationMode variant{AggregationKind::variant_eedqn};
  EXPECT_EQ(bootstrap_value(eedqn, true, rows, rows), 5.0);
  EXPECT_EQ(bootstrap_value(eedqn, false, rows, rows), 6.0);
  EXPECT_EQ(bootstrap_value(variant, true, rows, rows), 6.0);
  EXPECT_EQ(bootstrap_value(variant, false, rows, rows), 5.0);
}

TEST(Aggregation, DoubleSelectEvaluatesOnlineArgmax) {
  const std::vector<double> online{0.0, 1.0, 0.5};
  const std::vector<double> target{9.0, 2.0, 7.0};
  const Rows on{online}, tg{target};
  EXPECT_EQ(bootstrap_value({AggregationKind::double_select}, false, tg, on), 2.0);
  EXPECT_EQ(bootstrap_value({AggregationKind::single_net}, false, tg, on), 9.0);
}

TEST(Aggregation, MinNeverAboveConvexNeverAboveAverage) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> q(0.0, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t members = 1 + trial % 5;
    std::vector<std::vector<double>> storage(members, std::vector<double>(4));
    for (auto& row : storage) {
      for (double& v : row) v = q(rng);
    }
    const Rows rows(storage.begin(), storage.end());
    const double lambda = trial % 7 == 0 ? (trial % 2 ? 0.0 : 1.0) : unit(rng);
    const double lo = bootstrap_value({AggregationKind::min_all}, true, rows, rows);
    const double mid = bootstrap_value(AggregationMode::convex_blend(lambda), true, rows, rows);
    const double hi = bootstrap_value({AggregationKind::avg_all}, true, rows, rows);
    ASSERT_LE(lo, mid + 1e-12);
    ASSERT_LE(mid, hi + 1e-12);
    EXPECT_EQ(lo, bootstrap_value({AggregationKind::maxmin_all}, false, rows, rows));
  }
}

TEST(Aggregation, ArgmaxPrefersLowestIndexOnTies) {
  const std::vector<double> v{1.0, 3.0, 3.0, 2.0};
  EXPECT_EQ(argmax(v), 1u);
  const std::vector<double> flat{0.0, 0.0};
  EXPECT_EQ(argmax(flat), 0u);
  EXPECT_THROW(combine_members(Rows{}, Combine::min), ConfigError);
}

}  // namespace
}  // namespace eedqn::agents
