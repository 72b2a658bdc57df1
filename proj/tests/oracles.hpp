#pragma once

// Independent reference computations the library is checked against. They
// favour the most literal formulation over speed and share no code with
// the implementation beyond the parameter containers.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "eedqn/tensornet/mlp.hpp"

namespace eedqn::oracle {

/// Straight-line forward pass: weights read as W[k][j], every term summed.
inline std::vector<std::vector<double>> forward_pass(const tensornet::NetParams& net,
                                                const tensornet::Matrix& obs) {
  std::vector<std::vector<double>> out;
  for (std::size_t b = 0; b < obs.rows(); ++b) {
    std::vector<double> x(obs.row(b).begin(), obs.row(b).end());
    for (std::size_t l = 0; l < net.layers().size(); ++l) {
      const tensornet::DenseLayer& layer = net.layer(l);
      std::vector<double> y(layer.out);
      for (std::size_t j = 0; j < layer.out; ++j) {
        double acc = layer.bias[j];
        for (std::size_t k = 0; k < layer.in; ++k) acc += x[k] * layer.weights[k * layer.out + j];
        y[j] = (l + 1 < net.layers().size()) ? std::max(acc, 0.0) : acc;
      }
      x = std::move(y);
    }
    out.push_back(std::move(x));
  }
  return out;
}

inline double mse(const tensornet::NetParams& net, const tensornet::Matrix& obs,
                  std::span<const std::size_t> actions, std::span<const double> targets) {
  const auto q = forward_pass(net, obs);
  double total = 0.0;
  for (std::size_t b = 0; b < q.size(); ++b) {
    const double e = q[b][actions[b]] - targets[b];
    total += e * e;
  }
  return total / static_cast<double>(q.size());
}

struct GradCheck {
  std::size_t checked = 0;
  std::size_t failed = 0;  // beyond both the relative tolerance and the floor
  double worst_abs = 0.0;
  double worst_rel = 0.0;
};

/// Central finite differences over every parameter, compared with `analytic`
/// under `rel` relative tolerance and an `abs_floor` absolute floor.
inline GradCheck finite_difference_check(tensornet::NetParams net, const tensornet::Matrix& obs,
                                         std::span<const std::size_t> actions,
                                         std::span<const double> targets,
                                         const tensornet::NetParams& analytic, double step,
                                         double rel, double abs_floor) {
  GradCheck result;
  auto probe = [&](double& param, double claimed) {
    const double saved = param;
    param = saved + step;
    const double up = mse(net, obs, actions, targets);
    param = saved - step;
    const double down = mse(net, obs, actions, targets);
    param = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double diff = std::abs(numeric - claimed);
    const double scale = std::max(std::abs(numeric), std::abs(claimed));
    const double r = scale > 0.0 ? diff / scale : 0.0;
    ++result.checked;
    result.worst_abs = std::max(result.worst_abs, diff);
    result.worst_rel = std::max(result.worst_rel, r);
    if (diff > abs_floor && r > rel) ++result.failed;
  };
  for (std::size_t l = 0; l < net.layers().size(); ++l) {
    tensornet::DenseLayer& layer = net.layer(l);
    const tensornet::DenseLayer& g = analytic.layer(l);
    for (std::size_t i = 0; i < layer.weights.size(); ++i) probe(layer.weights[i], g.weights[i]);
    for (std::size_t i = 0; i < layer.bias.size(); ++i) probe(layer.bias[i], g.bias[i]);
  }
  return result;
}

/// sum_k gamma^k r_k, accumulated left to right.
inline double discounted_sum(std::span<const double> rewards, double gamma) {
  double total = 0.0;
  for (std::size_t k = 0; k < rewards.size(); ++k) {
    total += std::pow(gamma, static_cast<double>(k)) * rewards[k];
  }
  return total;
}

/// Threshold recomputed from scratch: mean + std / sqrt(n), population or
/// sample standard deviation, 0 for fewer than two values.
inline double threshold(std::span<const double> values, bool population = true) {
  if (values.empty()) return 0.0;
  const auto n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  double sd = 0.0;
  if (values.size() >= 2) sd = std::sqrt(ss / (population ? n : n - 1.0));
  return mean + sd / std::sqrt(n);
}

/// Exhaustive permutation p-value enumerated with std::next_permutation over
/// a label vector: the fraction of distinct labelings whose |mean difference|
/// is at least the observed one (with a 1e-12 relative tie allowance).
inline double exhaustive_p(std::span<const double> a, std::span<const double> b) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  auto stat = [&](const std::vector<int>& labels) {
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < pooled.size(); ++i) (labels[i] ? sa : sb) += pooled[i];
    return std::abs(sa / static_cast<double>(a.size()) - sb / static_cast<double>(b.size()));
  };
  std::vector<int> labels(pooled.size(), 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(a.size()), 1);
  const double observed = stat(labels);
  std::sort(labels.begin(), labels.end());
  std::size_t total = 0, hits = 0;
  do {
    ++total;
    if (stat(labels) >= observed - 1e-12 * std::max(1.0, observed)) ++hits;
  } while (std::next_permutation(labels.begin(), labels.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace eedqn::oracle
