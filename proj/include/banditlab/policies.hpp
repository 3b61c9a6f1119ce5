#pragma once

// The four decision algorithms behind one interface: select an action for a
// context (given its embedding), then update from the observed reward.
//
//   softmax        - embedding-driven softmax bandit trained by one SGD step
//                    per round on the loss -r * ln P(a | e)
//   linucb         - per-arm ridge regression with a UCB exploration width
//   ucb1           - context-free UCB1 index policy
//   epsilon-greedy - context-free epsilon-greedy
//
// Ties break to the lowest index everywhere. Policy instances are
// single-threaded; parallel runs use separate instances.

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "banditlab/core.hpp"
#include "banditlab/json_io.hpp"

namespace banditlab {

struct NonFiniteInput : BanditError {
  using BanditError::BanditError;
};
struct DegenerateProbability : BanditError {
  using BanditError::BanditError;
};

inline int argmax_lowest(const Eigen::VectorXd& values) {
  int best = 0;
  for (int i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

// P(a | q) = exp(q_a) / sum_a' exp(q_a'), computed with max-subtraction so
// arbitrary shifts and magnitudes up to ~1e3 are safe. Components that
// underflow are floored at the smallest positive normal double, keeping the
// output strictly positive; the floor is ~1e-308 so the sum stays 1 within
// 1e-12.
inline Eigen::VectorXd softmax_probabilities(const Eigen::VectorXd& q) {
  if (q.size() == 0) throw DimensionMismatch("softmax of empty vector");
  if (!q.allFinite()) throw NonFiniteInput("softmax input has non-finite entries");
  const Eigen::VectorXd shifted = q.array() - q.maxCoeff();
  Eigen::VectorXd p = shifted.array().exp();
  p /= p.sum();
  return p.cwiseMax(std::numeric_limits<double>::min());
}

// Per-decision loss L = -r * ln(p) with p = P(chosen | e). p must lie in
// (0, 1]; softmax_probabilities can never produce p <= 0 but the guard stays.
inline double policy_loss(double reward, double probability) {
  if (!(probability > 0.0) || probability > 1.0 + 1e-12) {
    throw DegenerateProbability("loss needs a probability in (0, 1]");
  }
  return -reward * std::log(probability);
}

class Policy {
 public:
  virtual ~Policy() = default;

  virtual ActionId select(const Context& context, const EmbeddingVector& embedding,
                          RngStream& rng) = 0;
  virtual void update(const Context& context, const EmbeddingVector& embedding,
                      ActionId action, double reward) = 0;
  virtual std::string name() const = 0;
  virtual int num_actions() const = 0;

  // Debug snapshot: name, hyperparameters, and all state arrays. restore()
  // accepts exactly what snapshot() emits; the round trip is lossless.
  virtual json snapshot() const = 0;
  virtual void restore(const json& j) = 0;
};

enum class SelectMode { kSample, kGreedy };

inline SelectMode select_mode_from_string(const std::string& s) {
  if (s == "sample") return SelectMode::kSample;
  if (s == "greedy") return SelectMode::kGreedy;
  throw ConfigError("mode must be \"sample\" or \"greedy\" (got \"" + s + "\")");
}

// Softmax bandit over encoded contexts. Action values are linear per action,
// Q(e, a) = w_a . e + b_a; selection samples from the softmax of the Q
// vector (or takes the argmax in greedy mode); update performs one gradient
// descent step on -r * ln P(chosen | e):
//
//   w_j -= lr * r * (P_j - [j == chosen]) * e
//   b_j -= lr * r * (P_j - [j == chosen])
class SoftmaxPolicy final : public Policy {
 public:
  SoftmaxPolicy(int num_actions, int embedding_dim, double learning_rate = 0.05,
                SelectMode mode = SelectMode::kSample)
      : weights_(Eigen::MatrixXd::Zero(num_actions, embedding_dim)),
        biases_(Eigen::VectorXd::Zero(num_actions)),
        learning_rate_(learning_rate),
        mode_(mode) {
    if (num_actions < 2) throw ConfigError("softmax needs at least two actions");
    if (embedding_dim < 1) throw ConfigError("softmax needs embedding_dim >= 1");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
      throw ConfigError("softmax learning_rate must be positive");
    }
  }

  Eigen::VectorXd q_values(const EmbeddingVector& e) const {
    if (e.size() != weights_.cols()) {
      throw DimensionMismatch("embedding length " + std::to_string(e.size()) +
                              " != configured " + std::to_string(weights_.cols()));
    }
    return weights_ * e + biases_;
  }

  ActionId select(const Context&, const EmbeddingVector& e,
                  RngStream& rng) override {
    const Eigen::VectorXd p = softmax_probabilities(q_values(e));
    if (mode_ == SelectMode::kGreedy) return argmax_lowest(p);
    return rng.categorical(std::span<const double>(p.data(),
                                                   static_cast<std::size_t>(p.size())));
  }

  void update(const Context&, const EmbeddingVector& e, ActionId action,
              double reward) override {
    Eigen::VectorXd grad_q = softmax_probabilities(q_values(e));
    grad_q[action] -= 1.0;
    grad_q *= learning_rate_ * reward;
    weights_.noalias() -= grad_q * e.transpose();
    biases_ -= grad_q;
  }

  std::string name() const override { return "softmax"; }
  int num_actions() const override { return static_cast<int>(weights_.rows()); }

  const Eigen::MatrixXd& weights() const { return weights_; }
  const Eigen::VectorXd& biases() const { return biases_; }
  double learning_rate() const { return learning_rate_; }

  json snapshot() const override {
    std::vector<std::vector<double>> w(static_cast<std::size_t>(weights_.rows()));
    for (Eigen::Index r = 0; r < weights_.rows(); ++r) {
      w[static_cast<std::size_t>(r)].assign(weights_.row(r).begin(),
                                            weights_.row(r).end());
    }
    return json{{"name", "softmax"},
                {"learning_rate", learning_rate_},
                {"mode", mode_ == SelectMode::kSample ? "sample" : "greedy"},
                {"weights", w},
                {"biases", std::vector<double>(biases_.begin(), biases_.end())}};
  }

  void restore(const json& j) override {
    if (field_or<std::string>(j, "name", "", "snapshot") != "softmax") {
      throw ConfigError("snapshot is not a softmax policy");
    }
    learning_rate_ = require_field<double>(j, "learning_rate", "snapshot");
    mode_ = select_mode_from_string(
        require_field<std::string>(j, "mode", "snapshot"));
    const auto w =
        require_field<std::vector<std::vector<double>>>(j, "weights", "snapshot");
    const auto b = require_field<std::vector<double>>(j, "biases", "snapshot");
    if (w.size() != b.size() || w.empty()) {
      throw DimensionMismatch("snapshot weights/biases shape mismatch");
    }
    weights_.resize(static_cast<Eigen::Index>(w.size()),
                    static_cast<Eigen::Index>(w.front().size()));
    for (std::size_t r = 0; r < w.size(); ++r) {
      if (w[r].size() != w.front().size()) {
        throw DimensionMismatch("ragged snapshot weights");
      }
      for (std::size_t c = 0; c < w[r].size(); ++c) {
        weights_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = w[r][c];
      }
    }
    biases_ = Eigen::Map<const Eigen::VectorXd>(b.data(),
                                                static_cast<Eigen::Index>(b.size()));
  }

 private:
  Eigen::MatrixXd weights_;  // one row per action
  Eigen::VectorXd biases_;
  double learning_rate_;
  SelectMode mode_;
};

// Per-arm ridge regression with optional UCB width (LinUCB). Arm state is
// A_a = ridge * I + sum(e e^T) and b_a = sum(r e); scores are
// theta_a . e + alpha * sqrt(e^T A_a^-1 e) with theta_a = A_a^-1 b_a.
// Solves go through a Cholesky factorization that is rank-1-updated in
// place; A_a is never inverted explicitly.
class LinUcbPolicy final : public Policy {
 public:
  LinUcbPolicy(int num_actions, int embedding_dim, double alpha = 0.5,
               double ridge = 1.0)
      : alpha_(alpha), ridge_(ridge), dim_(embedding_dim) {
    if (num_actions < 2) throw ConfigError("linucb needs at least two actions");
    if (!(ridge > 0.0)) throw ConfigError("linucb ridge must be positive");
    if (alpha < 0.0) throw ConfigError("linucb alpha must be >= 0");
    arms_.reserve(static_cast<std::size_t>(num_actions));
    for (int a = 0; a < num_actions; ++a) {
      arms_.push_back(Arm(embedding_dim, ridge));
    }
  }

  ActionId select(const Context&, const EmbeddingVector& e, RngStream&) override {
    check_dim(e);
    Eigen::VectorXd scores(static_cast<Eigen::Index>(arms_.size()));
    for (std::size_t a = 0; a < arms_.size(); ++a) {
      const Arm& arm = arms_[a];
      const Eigen::VectorXd theta = arm.chol.solve(arm.b);
      const double width = e.dot(arm.chol.solve(e));
      scores[static_cast<Eigen::Index>(a)] =
          theta.dot(e) + alpha_ * std::sqrt(std::max(width, 0.0));
    }
    return argmax_lowest(scores);
  }

  void update(const Context&, const EmbeddingVector& e, ActionId action,
              double reward) override {
    check_dim(e);
    Arm& arm = arms_[static_cast<std::size_t>(action)];
    arm.A.noalias() += e * e.transpose();
    arm.b.noalias() += reward * e;
    arm.chol.rankUpdate(e, 1.0);
  }

  std::string name() const override { return "linucb"; }
  int num_actions() const override { return static_cast<int>(arms_.size()); }

  const Eigen::MatrixXd& arm_A(int a) const {
    return arms_[static_cast<std::size_t>(a)].A;
  }
  const Eigen::VectorXd& arm_b(int a) const {
    return arms_[static_cast<std::size_t>(a)].b;
  }

  json snapshot() const override {
    json arms = json::array();
    for (const Arm& arm : arms_) {
      std::vector<std::vector<double>> a_rows(static_cast<std::size_t>(arm.A.rows()));
      for (Eigen::Index r = 0; r < arm.A.rows(); ++r) {
        a_rows[static_cast<std::size_t>(r)].assign(arm.A.row(r).begin(),
                                                   arm.A.row(r).end());
      }
      arms.push_back(json{
          {"A", a_rows},
          {"b", std::vector<double>(arm.b.begin(), arm.b.end())}});
    }
    return json{{"name", "linucb"},
                {"alpha", alpha_},
                {"ridge", ridge_},
                {"arms", arms}};
  }

  void restore(const json& j) override {
    if (field_or<std::string>(j, "name", "", "snapshot") != "linucb") {
      throw ConfigError("snapshot is not a linucb policy");
    }
    alpha_ = require_field<double>(j, "alpha", "snapshot");
    ridge_ = require_field<double>(j, "ridge", "snapshot");
    const json& arms = j.at("arms");
    if (!arms.is_array() || arms.size() != arms_.size()) {
      throw DimensionMismatch("snapshot arm count mismatch");
    }
    for (std::size_t a = 0; a < arms_.size(); ++a) {
      const auto rows = require_field<std::vector<std::vector<double>>>(
          arms[a], "A", "snapshot");
      const auto b = require_field<std::vector<double>>(arms[a], "b", "snapshot");
      if (rows.size() != static_cast<std::size_t>(dim_) ||
          b.size() != static_cast<std::size_t>(dim_)) {
        throw DimensionMismatch("snapshot arm dimension mismatch");
      }
      Arm& arm = arms_[a];
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != static_cast<std::size_t>(dim_)) {
          throw DimensionMismatch("ragged snapshot A matrix");
        }
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
          arm.A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              rows[r][c];
        }
      }
      arm.b = Eigen::Map<const Eigen::VectorXd>(b.data(),
                                                static_cast<Eigen::Index>(b.size()));
      arm.chol.compute(arm.A);
      if (arm.chol.info() != Eigen::Success) {
        throw BanditError("snapshot A matrix is not positive definite");
      }
    }
  }

 private:
  struct Arm {
    Arm(int dim, double ridge)
        : A(Eigen::MatrixXd::Identity(dim, dim) * ridge),
          b(Eigen::VectorXd::Zero(dim)),
          chol(A) {}
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    Eigen::LLT<Eigen::MatrixXd> chol;
  };

  void check_dim(const EmbeddingVector& e) const {
    if (e.size() != dim_) {
      throw DimensionMismatch("embedding length " + std::to_string(e.size()) +
                              " != configured " + std::to_string(dim_));
    }
  }

  double alpha_;
  double ridge_;
  int dim_;
  std::vector<Arm> arms_;
};

// Incremental per-arm reward means shared by the context-free baselines.
struct RunningMeans {
  std::vector<long long> counts;
  std::vector<double> means;
  long long total_pulls = 0;

  explicit RunningMeans(int num_actions)
      : counts(static_cast<std::size_t>(num_actions), 0),
        means(static_cast<std::size_t>(num_actions), 0.0) {}

  void add(ActionId action, double reward) {
    auto a = static_cast<std::size_t>(action);
    counts[a] += 1;
    means[a] += (reward - means[a]) / static_cast<double>(counts[a]);
    total_pulls += 1;
  }
};

// UCB1: pull every arm once (lowest index first), then argmax of
// mean_a + sqrt(2 ln t / n_a). Context and embedding are ignored.
class Ucb1Policy final : public Policy {
 public:
  explicit Ucb1Policy(int num_actions) : stats_(num_actions) {
    if (num_actions < 2) throw ConfigError("ucb1 needs at least two actions");
  }

  ActionId select(const Context&, const EmbeddingVector&, RngStream&) override {
    const auto n = stats_.counts.size();
    for (std::size_t a = 0; a < n; ++a) {
      if (stats_.counts[a] == 0) return static_cast<ActionId>(a);
    }
    Eigen::VectorXd scores(static_cast<Eigen::Index>(n));
    const double log_t = std::log(static_cast<double>(stats_.total_pulls));
    for (std::size_t a = 0; a < n; ++a) {
      scores[static_cast<Eigen::Index>(a)] =
          stats_.means[a] +
          std::sqrt(2.0 * log_t / static_cast<double>(stats_.counts[a]));
    }
    return argmax_lowest(scores);
  }

  void update(const Context&, const EmbeddingVector&, ActionId action,
              double reward) override {
    stats_.add(action, reward);
  }

  std::string name() const override { return "ucb1"; }
  int num_actions() const override { return static_cast<int>(stats_.counts.size()); }

  const RunningMeans& stats() const { return stats_; }

  json snapshot() const override {
    return json{{"name", "ucb1"},
                {"counts", stats_.counts},
                {"means", stats_.means},
                {"total_pulls", stats_.total_pulls}};
  }

  void restore(const json& j) override {
    if (field_or<std::string>(j, "name", "", "snapshot") != "ucb1") {
      throw ConfigError("snapshot is not a ucb1 policy");
    }
    auto counts = require_field<std::vector<long long>>(j, "counts", "snapshot");
    auto means = require_field<std::vector<double>>(j, "means", "snapshot");
    if (counts.size() != stats_.counts.size() || means.size() != stats_.means.size()) {
      throw DimensionMismatch("snapshot arm count mismatch");
    }
    stats_.counts = std::move(counts);
    stats_.means = std::move(means);
    stats_.total_pulls = require_field<long long>(j, "total_pulls", "snapshot");
  }

 private:
  RunningMeans stats_;
};

// Epsilon-greedy: with probability epsilon pick uniformly over all actions
// (the greedy one included), otherwise argmax of the running means. Unpulled
// arms count as mean 0. Context and embedding are ignored.
class EpsilonGreedyPolicy final : public Policy {
 public:
  EpsilonGreedyPolicy(int num_actions, double epsilon = 0.1)
      : epsilon_(epsilon), stats_(num_actions) {
    if (num_actions < 2) throw ConfigError("epsilon-greedy needs at least two actions");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw ConfigError("epsilon must lie in [0, 1]");
    }
  }

  ActionId select(const Context&, const EmbeddingVector&, RngStream& rng) override {
    if (rng.uniform01() < epsilon_) {
      return rng.uniform_int(static_cast<int>(stats_.counts.size()));
    }
    return argmax_lowest(Eigen::Map<const Eigen::VectorXd>(
        stats_.means.data(), static_cast<Eigen::Index>(stats_.means.size())));
  }

  void update(const Context&, const EmbeddingVector&, ActionId action,
              double reward) override {
    stats_.add(action, reward);
  }

  std::string name() const override { return "epsilon-greedy"; }
  int num_actions() const override { return static_cast<int>(stats_.counts.size()); }

  double epsilon() const { return epsilon_; }
  const RunningMeans& stats() const { return stats_; }

  json snapshot() const override {
    return json{{"name", "epsilon-greedy"},
                {"epsilon", epsilon_},
                {"counts", stats_.counts},
                {"means", stats_.means},
                {"total_pulls", stats_.total_pulls}};
  }

  void restore(const json& j) override {
    if (field_or<std::string>(j, "name", "", "snapshot") != "epsilon-greedy") {
      throw ConfigError("snapshot is not an epsilon-greedy policy");
    }
    epsilon_ = require_field<double>(j, "epsilon", "snapshot");
    auto counts = require_field<std::vector<long long>>(j, "counts", "snapshot");
    auto means = require_field<std::vector<double>>(j, "means", "snapshot");
    if (counts.size() != stats_.counts.size() || means.size() != stats_.means.size()) {
      throw DimensionMismatch("snapshot arm count mismatch");
    }
    stats_.counts = std::move(counts);
    stats_.means = std::move(means);
    stats_.total_pulls = require_field<long long>(j, "total_pulls", "snapshot");
  }

 private:
  double epsilon_;
  RunningMeans stats_;
};

// Builds a policy from its config-file name and parameter object. Unknown
// names and unknown parameter keys are errors.
inline std::unique_ptr<Policy> make_policy(const std::string& name,
                                           const json& params, int num_actions,
                                           int embedding_dim) {
  const json p = params.is_null() ? json::object() : params;
  if (name == "softmax") {
    check_keys(p, {"learning_rate", "mode"}, "softmax params");
    return std::make_unique<SoftmaxPolicy>(
        num_actions, embedding_dim,
        field_or<double>(p, "learning_rate", 0.05, "softmax params"),
        select_mode_from_string(
            field_or<std::string>(p, "mode", "sample", "softmax params")));
  }
  if (name == "linucb") {
    check_keys(p, {"alpha", "ridge"}, "linucb params");
    return std::make_unique<LinUcbPolicy>(
        num_actions, embedding_dim,
        field_or<double>(p, "alpha", 0.5, "linucb params"),
        field_or<double>(p, "ridge", 1.0, "linucb params"));
  }
  if (name == "ucb1") {
    check_keys(p, {}, "ucb1 params");
    return std::make_unique<Ucb1Policy>(num_actions);
  }
  if (name == "epsilon-greedy") {
    check_keys(p, {"epsilon"}, "epsilon-greedy params");
    return std::make_unique<EpsilonGreedyPolicy>(
        num_actions, field_or<double>(p, "epsilon", 0.1, "epsilon-greedy params"));
  }
  throw ConfigError("unknown algorithm \"" + name +
                    "\" (expected softmax, linucb, ucb1, or epsilon-greedy)");
}

}  // namespace banditlab
