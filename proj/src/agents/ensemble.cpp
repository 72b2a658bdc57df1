#include "eedqn/agents/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eedqn/error.hpp"

namespace eedqn::agents {

using tensornet::Backend;
using tensornet::Matrix;
using tensornet::NetParams;

Ensemble::Ensemble(const tensornet::Topology& topology, std::size_t members,
                   tensornet::AdamConfig adam, std::uint64_t seed) {
  if (members == 0) throw ConfigError("ensemble needs at least one member");
  for (std::size_t i = 0; i < members; ++i) {
    online_.push_back(NetParams::initialized(topology, mix_seed(seed, i)));
    optimizers_.emplace_back(topology, adam);
  }
  targets_ = online_;
}

Ensemble::Ensemble(std::vector<NetParams> online, tensornet::AdamConfig adam)
    : online_(std::move(online)) {
  if (online_.empty()) throw ConfigError("ensemble needs at least one member");
  for (const NetParams& net : online_) {
    if (!net.same_shape(online_.front())) throw ConfigError("ensemble members differ in topology");
    optimizers_.emplace_back(net.topology(), adam);
  }
  targets_ = online_;
}

void Ensemble::sync_targets() {
  for (std::size_t i = 0; i < online_.size(); ++i) {
    targets_[i] = tensornet::clone_into_target(online_[i]);
  }
}

std::uint64_t Ensemble::target_fingerprint() const {
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < targets_.size(); ++i) h = mix_seed(h ^ targets_[i].fingerprint(), i);
  return h;
}

Matrix stack_observations(std::span<const envs::Observation* const> observations) {
  if (observations.empty()) throw ConfigError("cannot stack an empty observation batch");
  Matrix batch(observations.size(), observations.front()->size());
  for (std::size_t b = 0; b < observations.size(); ++b) observations[b]->flatten_into(batch.row(b));
  return batch;
}

namespace {

std::vector<Matrix> forward_each(std::span<const NetParams> nets, const Matrix& batch,
                                 Backend backend) {
  std::vector<Matrix> out;
  out.reserve(nets.size());
  for (const NetParams& net : nets) out.push_back(tensornet::forward(net, batch, backend));
  return out;
}

std::vector<double> row_mean(const std::vector<Matrix>& per_net, std::size_t row) {
  std::vector<std::span<const double>> rows;
  rows.reserve(per_net.size());
  for (const Matrix& m : per_net) rows.push_back(m.row(row));
  return combine_members(rows, Combine::avg);
}

double scalarize(std::span<const double> values, ValueScalarization how) {
  if (how == ValueScalarization::greedy) return *std::max_element(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

std::vector<double> mean_q(std::span<const NetParams> nets, const envs::Observation& obs,
                           Backend backend) {
  const envs::Observation* one[] = {&obs};
  return row_mean(forward_each(nets, stack_observations(one), backend), 0);
}

ActionChoice select_action(const envs::Observation& obs, double epsilon, const Ensemble& ensemble,
                           std::mt19937_64& rng, Backend backend) {
  const std::vector<double> q = mean_q(ensemble.online(), obs, backend);
  ActionChoice choice;
  choice.action = argmax(q);
  choice.greedy_value = q[choice.action];
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < epsilon) {
    choice.explored = true;
    choice.action = std::uniform_int_distribution<std::size_t>(0, q.size() - 1)(rng);
  }
  return choice;
}

double state_value_diff(std::span<const NetParams> nets, const envs::Observation& s,
                        const envs::Observation& s_next, ValueScalarization scalarization,
                        Backend backend) {
  const envs::Observation* pair[] = {&s, &s_next};
  const std::vector<Matrix> q = forward_each(nets, stack_observations(pair), backend);
  return std::abs(scalarize(row_mean(q, 0), scalarization) -
                  scalarize(row_mean(q, 1), scalarization));
}

std::vector<double> compute_targets(std::span<const buffers::Transition* const> batch,
                                    std::span<const NetParams> targets,
                                    std::span<const NetParams> online, const AggregationMode& mode,
                                    double gamma, Backend backend) {
  std::vector<const envs::Observation*> next;
  next.reserve(batch.size());
  for (const buffers::Transition* t : batch) next.push_back(&t->end);
  const Matrix next_batch = stack_observations(next);

  const std::vector<Matrix> target_q = forward_each(targets, next_batch, backend);
  std::vector<Matrix> online_q;
  if (mode.kind == AggregationKind::double_select) online_q = forward_each(online, next_batch, backend);

  std::vector<double> y(batch.size());
  std::vector<std::span<const double>> target_rows(target_q.size());
  std::vector<std::span<const double>> online_rows(online_q.size());
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const buffers::Transition& t = *batch[b];
    if (t.terminal) {
      y[b] = t.reward;
      continue;
    }
    for (std::size_t i = 0; i < target_q.size(); ++i) target_rows[i] = target_q[i].row(b);
    for (std::size_t i = 0; i < online_q.size(); ++i) online_rows[i] = online_q[i].row(b);
    const double discount = std::pow(gamma, static_cast<double>(t.extra_steps + 1));
    y[b] = t.reward + discount * bootstrap_value(mode, t.multi_step(), target_rows, online_rows);
  }
  return y;
}

double compute_target(const buffers::Transition& transition, std::span<const NetParams> targets,
                      std::span<const NetParams> online, const AggregationMode& mode, double gamma,
                      Backend backend) {
  const buffers::Transition* one[] = {&transition};
  return compute_targets(one, targets, online, mode, gamma, backend).front();
}

LearnStats learn_step(Ensemble& ensemble, std::span<const buffers::Transition* const> batch,
                      const AggregationMode& mode, double gamma, Backend backend) {
  if (batch.empty()) throw UsageError("learn_step: empty batch");
  const std::vector<double> y =
      compute_targets(batch, ensemble.targets(), ensemble.online(), mode, gamma, backend);

  std::vector<const envs::Observation*> starts;
  std::vector<std::size_t> actions;
  starts.reserve(batch.size());
  actions.reserve(batch.size());
  for (const buffers::Transition* t : batch) {
    starts.push_back(&t->start);
    actions.push_back(t->action);
  }
  const Matrix obs = stack_observations(starts);

  LearnStats stats;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    tensornet::GradientResult g = tensornet::gradient(ensemble.online()[i], obs, actions, y, backend);
    if (!std::isfinite(g.loss)) {
      throw NumericError("learn_step: non-finite loss for ensemble member " + std::to_string(i));
    }
    tensornet::apply_update(ensemble.online()[i], ensemble.optimizer(i), g.grad);
    stats.losses.push_back(g.loss);
    stats.max_abs_q = std::max(stats.max_abs_q, g.max_abs_prediction);
  }
  return stats;
}

}  // namespace eedqn::agents
