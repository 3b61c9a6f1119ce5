#pragma once

// Reward and regret accounting over trial logs, plus action-frequency
// statistics and across-seed aggregation.

#include <cmath>
#include <string>
#include <vector>

#include "banditlab/core.hpp"

namespace banditlab {

struct EmptyLog : BanditError {
  using BanditError::BanditError;
};
struct InsufficientSeeds : BanditError {
  using BanditError::BanditError;
};
struct MixedConfigs : BanditError {
  using BanditError::BanditError;
};

struct RunSummary {
  std::string algorithm;
  RngSeed seed = 0;
  int trials = 0;
  double cumulative_reward = 0.0;  // sum of sampled rewards
  double cumulative_regret = 0.0;  // sum of mu(a*) - mu(a_t)
  std::vector<int> checkpoints;
  std::vector<double> checkpoint_cum_reward;
  std::vector<double> checkpoint_cum_regret;
  std::vector<double> action_frequencies;  // selection counts / trials
};

// Re-derives all summary quantities from the per-round columns; it does not
// trust the log's own cum_* fields, so it doubles as an independent
// accumulation path for consistency checks.
inline RunSummary accumulate(const TrialLog& log, int num_actions,
                             const std::vector<int>& checkpoints,
                             const std::string& algorithm = "",
                             RngSeed seed = 0) {
  if (log.empty()) throw EmptyLog("cannot summarize an empty trial log");
  for (int cp : checkpoints) {
    if (cp < 1 || cp > static_cast<int>(log.size())) {
      throw ConfigError("checkpoint " + std::to_string(cp) +
                        " outside [1, " + std::to_string(log.size()) + "]");
    }
  }
  RunSummary s;
  s.algorithm = algorithm;
  s.seed = seed;
  s.trials = static_cast<int>(log.size());
  s.checkpoints = checkpoints;
  s.checkpoint_cum_reward.resize(checkpoints.size(), 0.0);
  s.checkpoint_cum_regret.resize(checkpoints.size(), 0.0);
  std::vector<long long> counts(static_cast<std::size_t>(num_actions), 0);

  double reward_sum = 0.0;
  double regret_sum = 0.0;
  for (std::size_t i = 0; i < log.size(); ++i) {
    const TrialRecord& rec = log[i];
    reward_sum += rec.reward;
    regret_sum += rec.oracle_mean - rec.chosen_mean;
    if (rec.action_id < 0 || rec.action_id >= num_actions) {
      throw BanditError("action id " + std::to_string(rec.action_id) +
                        " out of range in trial log");
    }
    counts[static_cast<std::size_t>(rec.action_id)] += 1;
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      if (static_cast<int>(i) + 1 == checkpoints[c]) {
        s.checkpoint_cum_reward[c] = reward_sum;
        s.checkpoint_cum_regret[c] = regret_sum;
      }
    }
  }
  s.cumulative_reward = reward_sum;
  s.cumulative_regret = regret_sum;
  s.action_frequencies.resize(counts.size());
  for (std::size_t a = 0; a < counts.size(); ++a) {
    s.action_frequencies[a] =
        static_cast<double>(counts[a]) / static_cast<double>(log.size());
  }
  return s;
}

struct MetricStat {
  double mean = 0.0;
  double std_dev = 0.0;  // unbiased sample standard deviation
};

inline double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

inline MetricStat mean_std(const std::vector<double>& xs) {
  MetricStat st;
  st.mean = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - st.mean) * (x - st.mean);
  st.std_dev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return st;
}

struct AggregateSummary {
  std::string algorithm;
  int trials = 0;
  int num_seeds = 0;
  std::vector<int> checkpoints;
  MetricStat cumulative_reward;
  MetricStat cumulative_regret;
  std::vector<MetricStat> checkpoint_cum_reward;
  std::vector<MetricStat> checkpoint_cum_regret;
  std::vector<MetricStat> action_frequencies;
};

// Mean and unbiased sample std per metric over >= 2 same-config runs.
inline AggregateSummary aggregate_over_seeds(const std::vector<RunSummary>& runs) {
  if (runs.size() < 2) {
    throw InsufficientSeeds("aggregation needs at least two runs, got " +
                            std::to_string(runs.size()));
  }
  const RunSummary& first = runs.front();
  for (const RunSummary& r : runs) {
    if (r.algorithm != first.algorithm || r.trials != first.trials ||
        r.checkpoints != first.checkpoints ||
        r.action_frequencies.size() != first.action_frequencies.size()) {
      throw MixedConfigs("cannot aggregate runs with different configs");
    }
  }
  AggregateSummary agg;
  agg.algorithm = first.algorithm;
  agg.trials = first.trials;
  agg.num_seeds = static_cast<int>(runs.size());
  agg.checkpoints = first.checkpoints;

  auto gather = [&](auto&& proj) {
    std::vector<double> xs;
    xs.reserve(runs.size());
    for (const RunSummary& r : runs) xs.push_back(proj(r));
    return mean_std(xs);
  };
  agg.cumulative_reward = gather([](const RunSummary& r) { return r.cumulative_reward; });
  agg.cumulative_regret = gather([](const RunSummary& r) { return r.cumulative_regret; });
  for (std::size_t c = 0; c < first.checkpoints.size(); ++c) {
    agg.checkpoint_cum_reward.push_back(
        gather([c](const RunSummary& r) { return r.checkpoint_cum_reward[c]; }));
    agg.checkpoint_cum_regret.push_back(
        gather([c](const RunSummary& r) { return r.checkpoint_cum_regret[c]; }));
  }
  for (std::size_t a = 0; a < first.action_frequencies.size(); ++a) {
    agg.action_frequencies.push_back(
        gather([a](const RunSummary& r) { return r.action_frequencies[a]; }));
  }
  return agg;
}

}  // namespace banditlab
