#pragma once

// Core domain types and the deterministic-randomness contract shared by
// every banditlab component.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace banditlab {

using ActionId = int;
using Reward = double;
using RngSeed = std::uint64_t;

// Encoded context e(c): a real vector whose length is fixed for the whole
// run by the encoder configuration. Components must be finite.
using EmbeddingVector = Eigen::VectorXd;

struct BanditError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : BanditError {
  using BanditError::BanditError;
};
struct DimensionMismatch : BanditError {
  using BanditError::BanditError;
};
struct ConfigError : BanditError {
  using BanditError::BanditError;
};

// Textual side information presented to the policy each round. `id` indexes
// the environment's context list; the (id, text) pairing is stable within a
// run.
struct Context {
  std::string text;
  int id = 0;
};

// Ordered set of candidate actions; an ActionId is an index into it.
struct ActionSet {
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(labels.size()); }

  void validate() const {
    if (labels.size() < 2) {
      throw ConfigError("action set needs at least two actions");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].empty()) throw ConfigError("empty action label");
      for (std::size_t j = i + 1; j < labels.size(); ++j) {
        if (labels[i] == labels[j]) {
          throw ConfigError("duplicate action label: " + labels[i]);
        }
      }
    }
  }
};

// One row of the append-only per-round log. instant_regret is computed on
// true means, mu(a*) - mu(a_t), never on sampled rewards; the cum_* fields
// are running sums of the per-round columns.
struct TrialRecord {
  int t = 0;  // 1-based round index
  int context_id = 0;
  ActionId action_id = 0;
  double reward = 0.0;       // sampled reward paid to the policy
  double oracle_mean = 0.0;  // mu(a*) for this round's context
  double chosen_mean = 0.0;  // mu(a_t)
  double instant_regret = 0.0;
  double cum_reward = 0.0;
  double cum_regret = 0.0;
};

using TrialLog = std::vector<TrialRecord>;

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Named deterministic sub-stream of an experiment seed.
//
// The per-stream seed is splitmix64(splitmix64(seed) ^ fnv1a64(label)), so
// distinct labels under one seed give unrelated sequences and adding draws
// in one component never perturbs another. The generator is std::mt19937_64,
// whose output is fully specified by the standard; the uniform and normal
// transforms below are implemented here because std::*_distribution output
// is implementation-defined and would break cross-platform reproducibility.
//
// A stream is single-consumer: do not share one instance across threads.
class RngStream {
 public:
  RngStream(RngSeed seed, std::string_view stream)
      : seed_(seed),
        stream_(stream),
        gen_(splitmix64(splitmix64(seed) ^ fnv1a64(stream))) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Bias is at most n / 2^64 and exactly zero for
  // powers of two.
  int uniform_int(int n) {
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
  }

  // N(mean, stddev^2) via Box-Muller. Consumes exactly two raw draws no
  // matter the outcome, so stream alignment is independent of sampled values.
  double normal(double mean, double stddev) {
    const double u1 =
        static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * radius * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Index drawn with probability weights[i] / sum(weights); one raw draw.
  // Weights must be nonnegative with positive sum; zero-weight indices are
  // never returned.
  int categorical(std::span<const double> weights) {
    const double u = uniform01();
    double acc = 0.0;
    int last_positive = -1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      acc += weights[i];
      last_positive = static_cast<int>(i);
      if (u < acc) return last_positive;
    }
    if (last_positive < 0) {
      throw BanditError("categorical: no positive weight");
    }
    return last_positive;  // u landed in the rounding slack at the top
  }

  RngSeed seed() const { return seed_; }
  const std::string& stream() const { return stream_; }

 private:
  RngSeed seed_;
  std::string stream_;
  std::mt19937_64 gen_;
};

}  // namespace banditlab
