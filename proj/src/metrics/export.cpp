#include "eedqn/metrics/export.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "eedqn/metrics/permutation.hpp"

namespace eedqn::metrics {
namespace {

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_real(const std::string& s, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw std::runtime_error(path.string() + ": bad number '" + s + "'");
}

std::uint64_t parse_uint(const std::string& s, const std::filesystem::path& path) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error(path.string() + ": bad integer '" + s + "'");
  }
  return v;
}

std::vector<std::vector<std::string>> read_table(const std::filesystem::path& path,
                                                 const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != expected_header) {
    throw std::runtime_error(path.string() + ": expected header '" + expected_header + "'");
  }
  const std::size_t width = split_csv_line(expected_header).size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != width) throw std::runtime_error(path.string() + ": ragged row '" + line + "'");
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

constexpr const char* kResultsHeader = "env,algo,seed,final_score,peak_q_ratio";
constexpr const char* kEpochsHeader = "env,algo,seed,epoch,mean_reward,max_abs_q,q_ratio";

nlohmann::json ci_json(const MeanCi& ci) {
  return {{"mean", ci.mean}, {"ci_low", ci.low}, {"ci_high", ci.high},
          {"half_width", ci.half_width}, {"n", ci.n}};
}

}  // namespace

std::vector<EpochRow> epoch_rows(const std::string& env, const std::string& algo,
                                 std::uint64_t seed, const EpochSeries& series, double bound) {
  std::vector<EpochRow> rows;
  rows.reserve(series.epochs.size());
  for (const EpochStats& e : series.epochs) {
    rows.push_back({env, algo, seed, e.epoch, e.mean_reward, e.max_abs_q, q_ratio(e.max_abs_q, bound)});
  }
  return rows;
}

void sort_summaries(std::vector<RunSummary>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const RunSummary& x, const RunSummary& y) {
    return std::tie(x.env, x.algo, x.seed) < std::tie(y.env, y.algo, y.seed);
  });
}

void write_results_csv(const std::filesystem::path& path, std::vector<RunSummary> rows) {
  sort_summaries(rows);
  std::ofstream out = open_out(path);
  out << kResultsHeader << '\n';
  for (const RunSummary& r : rows) {
    out << r.env << ',' << r.algo << ',' << r.seed << ',' << real(r.final_score) << ','
        << real(r.peak_q_ratio) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<RunSummary> read_results_csv(const std::filesystem::path& path) {
  std::vector<RunSummary> rows;
  for (const auto& f : read_table(path, kResultsHeader)) {
    rows.push_back({f[0], f[1], parse_uint(f[2], path), parse_real(f[3], path), parse_real(f[4], path)});
  }
  return rows;
}

void write_epochs_csv(const std::filesystem::path& path, const std::vector<EpochRow>& rows) {
  std::ofstream out = open_out(path);
  out << kEpochsHeader << '\n';
  for (const EpochRow& r : rows) {
    out << r.env << ',' << r.algo << ',' << r.seed << ',' << r.epoch << ',' << real(r.mean_reward)
        << ',' << real(r.max_abs_q) << ',' << real(r.q_ratio) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<EpochRow> read_epochs_csv(const std::filesystem::path& path) {
  std::vector<EpochRow> rows;
  for (const auto& f : read_table(path, kEpochsHeader)) {
    rows.push_back({f[0], f[1], parse_uint(f[2], path), parse_uint(f[3], path),
                    parse_real(f[4], path), parse_real(f[5], path), parse_real(f[6], path)});
  }
  return rows;
}

nlohmann::json build_summary(std::vector<RunSummary> runs, const std::vector<EpochRow>& epochs,
                             const SummaryOptions& options) {
  sort_summaries(runs);
  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::vector<const RunSummary*>> groups;
  for (const RunSummary& r : runs) groups[{r.env, r.algo}].push_back(&r);

  std::map<Key, std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>>> curves;
  for (const EpochRow& e : epochs) {
    auto& slot = curves[{e.env, e.algo}][e.epoch];
    slot.first.push_back(e.mean_reward);
    slot.second.push_back(e.q_ratio);
  }

  nlohmann::json out = nlohmann::json::array();
  for (const auto& [key, members] : groups) {
    std::vector<double> scores, ratios;
    for (const RunSummary* r : members) {
      scores.push_back(r->final_score);
      ratios.push_back(r->peak_q_ratio);
    }
    nlohmann::json g = {{"env", key.first},
                        {"algo", key.second},
                        {"seeds", members.size()},
                        {"final_score", ci_json(mean_ci95(scores))},
                        {"peak_q_ratio", ci_json(mean_ci95(ratios))}};

    const auto ref = groups.find({key.first, options.reference_algo});
    if (key.second != options.reference_algo && ref != groups.end()) {
      std::vector<double> ref_scores;
      for (const RunSummary* r : ref->second) ref_scores.push_back(r->final_score);
      const PermutationResult p =
          permutation_test(ref_scores, scores, options.n_permutations, options.seed);
      g["p_value_vs_" + options.reference_algo] = p.p_value;
      g["permutation_exhaustive"] = p.exhaustive;
    } else {
      g["p_value_vs_" + options.reference_algo] = nullptr;
    }

    nlohmann::json curve = nlohmann::json::array();
    if (const auto it = curves.find(key); it != curves.end()) {
      for (const auto& [epoch, values] : it->second) {
        curve.push_back({{"epoch", epoch},
                         {"mean_reward", ci_json(mean_ci95(values.first))},
                         {"q_ratio", ci_json(mean_ci95(values.second))}});
      }
    }
    g["epochs"] = std::move(curve);
    out.push_back(std::move(g));
  }
  return {{"groups", std::move(out)}, {"reference_algo", options.reference_algo}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out = open_out(path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void export_results(const std::filesystem::path& dir, const std::vector<RunSummary>& runs,
                    const std::vector<EpochRow>& epochs, const SummaryOptions& options) {
  std::filesystem::create_directories(dir);
  write_results_csv(dir / "results.csv", runs);
  write_json(dir / "summary.json", build_summary(runs, epochs, options));
}

}  // namespace eedqn::metrics
