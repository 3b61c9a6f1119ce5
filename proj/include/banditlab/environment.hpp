#pragma once

// Synthetic weather world: context arrival, Gaussian reward sampling, and
// the oracle (optimal action and its true mean) that regret is measured
// against. The reward model is a JSON document:
//
//   {"contexts": [...], "actions": [...],
//    "means": [[...]], "stds": [[...]],
//    "context_weights": [...]}        // optional, defaults to uniform
//
// means/stds are |contexts| x |actions|. Every row must have a unique
// argmax so the oracle is well-defined. Rewards are pure Gaussian draws,
// never clipped.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/json_io.hpp"

namespace banditlab {

struct ShapeError : BanditError {
  using BanditError::BanditError;
};
struct NonUniqueOptimum : BanditError {
  using BanditError::BanditError;
};
struct BadWeights : BanditError {
  using BanditError::BanditError;
};

struct RewardModel {
  std::vector<std::string> contexts;
  ActionSet actions;
  std::vector<std::vector<double>> means;  // [context][action]
  std::vector<std::vector<double>> stds;
  std::vector<double> context_weights;

  int num_contexts() const { return static_cast<int>(contexts.size()); }
  int num_actions() const { return actions.size(); }

  void validate() const {
    if (contexts.empty()) throw ShapeError("reward model has no contexts");
    for (const auto& c : contexts) {
      if (c.empty()) throw ShapeError("empty context text");
    }
    for (std::size_t i = 0; i < contexts.size(); ++i) {
      for (std::size_t j = i + 1; j < contexts.size(); ++j) {
        if (contexts[i] == contexts[j]) {
          throw ShapeError("duplicate context text: " + contexts[i]);
        }
      }
    }
    actions.validate();
    const auto rows = contexts.size();
    const auto cols = static_cast<std::size_t>(actions.size());
    if (means.size() != rows || stds.size() != rows) {
      throw ShapeError("means/stds row count != number of contexts");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (means[r].size() != cols || stds[r].size() != cols) {
        throw ShapeError("means/stds row " + std::to_string(r) +
                         " length != number of actions");
      }
      for (std::size_t c = 0; c < cols; ++c) {
        if (!std::isfinite(means[r][c])) {
          throw ShapeError("non-finite mean at [" + std::to_string(r) + "][" +
                           std::to_string(c) + "]");
        }
        if (!std::isfinite(stds[r][c]) || stds[r][c] < 0.0) {
          throw ShapeError("std at [" + std::to_string(r) + "][" +
                           std::to_string(c) + "] must be finite and >= 0");
        }
      }
      // Strict unique argmax keeps the oracle tie-free.
      const double top = *std::max_element(means[r].begin(), means[r].end());
      if (std::count(means[r].begin(), means[r].end(), top) != 1) {
        throw NonUniqueOptimum("context \"" + contexts[r] +
                               "\" has a tied best action");
      }
    }
    if (context_weights.size() != rows) {
      throw BadWeights("context_weights length != number of contexts");
    }
    double total = 0.0;
    for (double w : context_weights) {
      if (!std::isfinite(w) || w < 0.0) {
        throw BadWeights("context weights must be finite and >= 0");
      }
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw BadWeights("context weights sum to " + std::to_string(total) +
                       ", expected 1");
    }
  }

  static RewardModel from_json(const json& j, const std::string& where) {
    check_keys(j, {"contexts", "actions", "means", "stds", "context_weights"},
               where);
    RewardModel m;
    m.contexts = require_field<std::vector<std::string>>(j, "contexts", where);
    m.actions.labels = require_field<std::vector<std::string>>(j, "actions", where);
    m.means = require_field<std::vector<std::vector<double>>>(j, "means", where);
    m.stds = require_field<std::vector<std::vector<double>>>(j, "stds", where);
    m.context_weights = field_or<std::vector<double>>(
        j, "context_weights",
        std::vector<double>(m.contexts.size(),
                            m.contexts.empty() ? 0.0 : 1.0 / m.contexts.size()),
        where);
    m.validate();
    return m;
  }

  json to_json() const {
    return json{{"contexts", contexts},
                {"actions", actions.labels},
                {"means", means},
                {"stds", stds},
                {"context_weights", context_weights}};
  }
};

inline RewardModel load_reward_model(const std::string& path) {
  return RewardModel::from_json(load_json_file(path), path);
}

// Draws the round's context i.i.d. from context_weights. Callers pass the
// "env-context" stream so the arrival sequence depends on the seed alone.
inline Context sample_context(const RewardModel& model, RngStream& rng) {
  const int id = rng.categorical(model.context_weights);
  return Context{model.contexts[static_cast<std::size_t>(id)], id};
}

// One Gaussian reward draw for (context, action). Consumes exactly two raw
// draws from the "env-reward" stream per call, so the stream stays aligned
// across policies that choose different actions.
inline double sample_reward(const RewardModel& model, int context_id,
                            ActionId action, RngStream& rng) {
  const auto c = static_cast<std::size_t>(context_id);
  const auto a = static_cast<std::size_t>(action);
  return rng.normal(model.means[c][a], model.stds[c][a]);
}

struct OracleAnswer {
  ActionId action = 0;
  double mean = 0.0;
};

// Optimal action and its true mean for a context. Pure: no RNG involved.
inline OracleAnswer oracle(const RewardModel& model, int context_id) {
  const auto& row = model.means[static_cast<std::size_t>(context_id)];
  std::size_t best = 0;
  for (std::size_t a = 1; a < row.size(); ++a) {
    if (row[a] > row[best]) best = a;
  }
  return OracleAnswer{static_cast<ActionId>(best), row[best]};
}

}  // namespace banditlab
