#pragma once

// Seeded experiment orchestration: the per-round loop
// (context -> encode -> select -> reward -> update), experiment configs,
// output emission, and re-rendering of emitted results.
//
// Determinism contract: config + seed fully determine every output byte.
// The context and reward streams are derived from the seed alone, so every
// algorithm run under one seed faces the identical context sequence (paired
// comparison). Trial CSVs store doubles in round-trip precision and can be
// re-accumulated to reproduce the summary and comparison outputs exactly.
//
// File formats:
//   trial CSV   header: t,context_id,action_id,reward,oracle_mean,
//               chosen_mean,instant_regret,cum_reward,cum_regret
//   summary     one JSON document per algorithm: per-seed summaries plus
//               mean/std aggregates (std is null with a single seed)
//   comparison  one CSV row per algorithm: mean cumulative reward and regret
//               at each checkpoint, then one mean frequency column per action
//   manifest    JSON with everything `report` needs to re-render the
//               comparison from the trial CSVs; no timestamps, no secrets

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/encoders.hpp"
#include "banditlab/environment.hpp"
#include "banditlab/json_io.hpp"
#include "banditlab/metrics.hpp"
#include "banditlab/policies.hpp"

namespace banditlab {

inline constexpr std::string_view kContextStream = "env-context";
inline constexpr std::string_view kRewardStream = "env-reward";
inline constexpr std::string_view kPolicyStream = "policy";

struct AlgorithmSpec {
  std::string name;
  json params = json::object();
};

struct OutputConfig {
  std::string directory;
  std::vector<std::string> formats = {"csv", "json"};
};

struct ExperimentConfig {
  std::string reward_model_path;
  EncoderConfig encoder;
  std::vector<AlgorithmSpec> algorithms;
  int trials = 1000;
  std::vector<RngSeed> seeds;
  std::vector<int> checkpoints = {250, 500, 750, 1000};
  OutputConfig output;

  void validate() const {
    if (reward_model_path.empty()) throw ConfigError("reward_model_path is required");
    encoder.validate();
    if (algorithms.empty()) throw ConfigError("algorithms list is empty");
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
      const std::string& n = algorithms[i].name;
      if (n != "softmax" && n != "linucb" && n != "ucb1" && n != "epsilon-greedy") {
        throw ConfigError("unknown algorithm \"" + n + "\"");
      }
      for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
        if (algorithms[j].name == n) {
          throw ConfigError("algorithm \"" + n + "\" listed twice");
        }
      }
    }
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (seeds.empty()) throw ConfigError("seeds list is empty");
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      for (std::size_t j = i + 1; j < seeds.size(); ++j) {
        if (seeds[i] == seeds[j]) throw ConfigError("duplicate seed");
      }
    }
    for (int cp : checkpoints) {
      if (cp < 1 || cp > trials) {
        throw ConfigError("checkpoint " + std::to_string(cp) +
                          " outside [1, trials]");
      }
    }
    for (std::size_t i = 1; i < checkpoints.size(); ++i) {
      if (checkpoints[i] <= checkpoints[i - 1]) {
        throw ConfigError("checkpoints must be strictly increasing");
      }
    }
    for (const std::string& f : output.formats) {
      if (f != "csv" && f != "json") {
        throw ConfigError("output format must be csv or json (got \"" + f + "\")");
      }
    }
  }

  static ExperimentConfig from_json(const json& j) {
    check_keys(j,
               {"reward_model_path", "encoder", "algorithms", "trials", "seeds",
                "checkpoints", "output"},
               "config");
    ExperimentConfig cfg;
    cfg.reward_model_path =
        require_field<std::string>(j, "reward_model_path", "config");
    if (auto it = j.find("encoder"); it != j.end()) {
      cfg.encoder = EncoderConfig::from_json(*it);
    }
    const json& algos = j.at("algorithms");
    if (!algos.is_array()) throw ParseError("config: algorithms must be an array");
    for (const json& a : algos) {
      check_keys(a, {"name", "params"}, "config.algorithms[]");
      AlgorithmSpec spec;
      spec.name = require_field<std::string>(a, "name", "config.algorithms[]");
      spec.params = a.value("params", json::object());
      cfg.algorithms.push_back(std::move(spec));
    }
    cfg.trials = field_or<int>(j, "trials", cfg.trials, "config");
    cfg.seeds = require_field<std::vector<RngSeed>>(j, "seeds", "config");
    cfg.checkpoints =
        field_or<std::vector<int>>(j, "checkpoints", cfg.checkpoints, "config");
    if (auto it = j.find("output"); it != j.end()) {
      check_keys(*it, {"directory", "formats"}, "config.output");
      cfg.output.directory =
          field_or<std::string>(*it, "directory", "", "config.output");
      cfg.output.formats = field_or<std::vector<std::string>>(
          *it, "formats", cfg.output.formats, "config.output");
    }
    return cfg;
  }

  json to_json() const {
    json algos = json::array();
    for (const AlgorithmSpec& a : algorithms) {
      algos.push_back(json{{"name", a.name}, {"params", a.params}});
    }
    return json{{"reward_model_path", reward_model_path},
                {"encoder", encoder.to_json()},
                {"algorithms", algos},
                {"trials", trials},
                {"seeds", seeds},
                {"checkpoints", checkpoints},
                {"output", json{{"directory", output.directory},
                                {"formats", output.formats}}}};
  }
};

// Loads a config file, resolving relative data paths against the config
// file's own directory so configs work from any working directory.
inline ExperimentConfig load_config(const std::string& path) {
  ExperimentConfig cfg = ExperimentConfig::from_json(load_json_file(path));
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  auto resolve = [&](std::string& p) {
    if (!p.empty() && std::filesystem::path(p).is_relative()) {
      p = (base / p).lexically_normal().string();
    }
  };
  resolve(cfg.reward_model_path);
  resolve(cfg.encoder.table_path);
  resolve(cfg.encoder.remote.cache_path);
  return cfg;
}

// Identity of the experiment: every field that can change results. Output
// location and formats are deliberately excluded so re-emitting the same
// experiment elsewhere keeps the same hash.
inline json experiment_identity(const ExperimentConfig& cfg) {
  json algos = json::array();
  for (const AlgorithmSpec& a : cfg.algorithms) {
    algos.push_back(json{{"name", a.name}, {"params", a.params}});
  }
  return json{{"reward_model_path", cfg.reward_model_path},
              {"encoder", cfg.encoder.to_json()},
              {"algorithms", algos},
              {"trials", cfg.trials},
              {"seeds", cfg.seeds},
              {"checkpoints", cfg.checkpoints}};
}

inline std::string config_hash(const ExperimentConfig& cfg) {
  const std::uint64_t h = fnv1a64(experiment_identity(cfg).dump());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

struct RunId {
  std::string algorithm;
  RngSeed seed = 0;
  std::string config_hash;

  std::string to_string() const {
    return algorithm + "_seed" + std::to_string(seed) + "_" + config_hash;
  }
};

// One experiment run: T rounds of context -> encode -> select -> reward ->
// update. Each distinct context is encoded once (memoized). The context and
// reward streams are functions of the seed alone; the policy stream is the
// only one the policy may consume.
inline TrialLog run_single(const RewardModel& model, Encoder& encoder,
                           Policy& policy, RngSeed seed, int trials) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (policy.num_actions() != model.num_actions()) {
    throw DimensionMismatch("policy has " + std::to_string(policy.num_actions()) +
                            " actions, model has " +
                            std::to_string(model.num_actions()));
  }
  RngStream context_rng(seed, kContextStream);
  RngStream reward_rng(seed, kRewardStream);
  RngStream policy_rng(seed, kPolicyStream);

  std::unordered_map<int, EmbeddingVector> embedding_memo;
  TrialLog log;
  log.reserve(static_cast<std::size_t>(trials));

  double cum_reward = 0.0;
  double cum_regret = 0.0;
  for (int t = 1; t <= trials; ++t) {
    const Context ctx = sample_context(model, context_rng);
    auto memo = embedding_memo.find(ctx.id);
    if (memo == embedding_memo.end()) {
      EmbeddingVector e = encoder.encode(ctx.text);
      if (!e.allFinite()) {
        throw BanditError("encoder produced non-finite embedding for \"" +
                          ctx.text + "\"");
      }
      memo = embedding_memo.emplace(ctx.id, std::move(e)).first;
    }
    const EmbeddingVector& embedding = memo->second;

    const ActionId action = policy.select(ctx, embedding, policy_rng);
    if (action < 0 || action >= model.num_actions()) {
      throw BanditError("policy \"" + policy.name() + "\" selected action " +
                        std::to_string(action) + " outside the action set");
    }
    const double reward = sample_reward(model, ctx.id, action, reward_rng);
    policy.update(ctx, embedding, action, reward);

    const OracleAnswer best = oracle(model, ctx.id);
    TrialRecord rec;
    rec.t = t;
    rec.context_id = ctx.id;
    rec.action_id = action;
    rec.reward = reward;
    rec.oracle_mean = best.mean;
    rec.chosen_mean = model.means[static_cast<std::size_t>(ctx.id)]
                                 [static_cast<std::size_t>(action)];
    rec.instant_regret = rec.oracle_mean - rec.chosen_mean;
    cum_reward += rec.reward;
    cum_regret += rec.instant_regret;
    rec.cum_reward = cum_reward;
    rec.cum_regret = cum_regret;
    log.push_back(rec);
  }
  return log;
}

// ---------------------------------------------------------------------------
// Serialization of trial logs and comparison tables.

// Round-trip double formatting: parsing the text reproduces the exact bits,
// which is what makes `report` byte-identical to the original emission.
inline std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline constexpr std::string_view kTrialCsvHeader =
    "t,context_id,action_id,reward,oracle_mean,chosen_mean,instant_regret,"
    "cum_reward,cum_regret";

inline std::string trial_csv(const TrialLog& log) {
  std::string out(kTrialCsvHeader);
  out.push_back('\n');
  for (const TrialRecord& r : log) {
    out += std::to_string(r.t);
    out.push_back(',');
    out += std::to_string(r.context_id);
    out.push_back(',');
    out += std::to_string(r.action_id);
    out.push_back(',');
    out += fmt_double(r.reward);
    out.push_back(',');
    out += fmt_double(r.oracle_mean);
    out.push_back(',');
    out += fmt_double(r.chosen_mean);
    out.push_back(',');
    out += fmt_double(r.instant_regret);
    out.push_back(',');
    out += fmt_double(r.cum_reward);
    out.push_back(',');
    out += fmt_double(r.cum_regret);
    out.push_back('\n');
  }
  return out;
}

inline TrialLog parse_trial_csv(const std::string& content,
                                const std::string& where) {
  TrialLog log;
  std::size_t pos = 0;
  int lineno = 0;
  auto next_line = [&]() -> std::string_view {
    if (pos >= content.size()) return {};
    const std::size_t end = content.find('\n', pos);
    std::string_view line{content.data() + pos,
                          (end == std::string::npos ? content.size() : end) - pos};
    pos = end == std::string::npos ? content.size() : end + 1;
    ++lineno;
    return line;
  };
  const std::string_view header = next_line();
  if (header != kTrialCsvHeader) {
    throw ParseError(where + ": unexpected trial CSV header");
  }
  while (pos < content.size()) {
    const std::string_view line = next_line();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 9) {
      throw ParseError(where + ":" + std::to_string(lineno) +
                       ": expected 9 fields");
    }
    TrialRecord r;
    try {
      r.t = std::stoi(fields[0]);
      r.context_id = std::stoi(fields[1]);
      r.action_id = std::stoi(fields[2]);
      r.reward = std::stod(fields[3]);
      r.oracle_mean = std::stod(fields[4]);
      r.chosen_mean = std::stod(fields[5]);
      r.instant_regret = std::stod(fields[6]);
      r.cum_reward = std::stod(fields[7]);
      r.cum_regret = std::stod(fields[8]);
    } catch (const std::exception&) {
      throw ParseError(where + ":" + std::to_string(lineno) + ": bad number");
    }
    log.push_back(r);
  }
  return log;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// One row per algorithm: mean cumulative reward and regret at every
// checkpoint across seeds, then the mean selection frequency per action.
// Fixed six-decimal formatting; this table is presentation, the trial CSVs
// are the exact data.
inline std::string render_comparison(
    const std::vector<std::string>& algorithm_order,
    const std::vector<std::vector<RunSummary>>& per_algorithm_runs,
    const std::vector<int>& checkpoints,
    const std::vector<std::string>& action_labels) {
  std::string out = "algorithm";
  for (int cp : checkpoints) out += ",cum_reward@" + std::to_string(cp);
  for (int cp : checkpoints) out += ",cum_regret@" + std::to_string(cp);
  for (const std::string& a : action_labels) out += ",freq:" + csv_quote(a);
  out.push_back('\n');

  auto fmt6 = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < algorithm_order.size(); ++i) {
    const std::vector<RunSummary>& runs = per_algorithm_runs[i];
    out += csv_quote(algorithm_order[i]);
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      std::vector<double> xs;
      for (const RunSummary& r : runs) xs.push_back(r.checkpoint_cum_reward[c]);
      out += "," + fmt6(mean_of(xs));
    }
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      std::vector<double> xs;
      for (const RunSummary& r : runs) xs.push_back(r.checkpoint_cum_regret[c]);
      out += "," + fmt6(mean_of(xs));
    }
    for (std::size_t a = 0; a < action_labels.size(); ++a) {
      std::vector<double> xs;
      for (const RunSummary& r : runs) xs.push_back(r.action_frequencies[a]);
      out += "," + fmt6(mean_of(xs));
    }
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whole-experiment execution.

struct RunOutput {
  RunId id;
  TrialLog log;
  RunSummary summary;
};

struct ExperimentResult {
  std::vector<RunOutput> runs;  // algorithm-major, seeds in config order
  std::vector<std::vector<RunSummary>> per_algorithm;  // same order as config
  std::string comparison_csv;
  json manifest;
};

inline std::string trial_file_name(const std::string& algorithm, RngSeed seed) {
  return "trials_" + algorithm + "_seed" + std::to_string(seed) + ".csv";
}

namespace detail {

inline json summary_to_json(const RunSummary& s) {
  return json{{"seed", s.seed},
              {"cumulative_reward", s.cumulative_reward},
              {"cumulative_regret", s.cumulative_regret},
              {"checkpoint_cum_reward", s.checkpoint_cum_reward},
              {"checkpoint_cum_regret", s.checkpoint_cum_regret},
              {"action_frequencies", s.action_frequencies}};
}

inline json algorithm_summary_json(const ExperimentConfig& cfg,
                                   const std::string& algorithm,
                                   const std::vector<RunSummary>& runs,
                                   const std::vector<std::string>& actions) {
  json per_seed = json::array();
  for (const RunSummary& r : runs) per_seed.push_back(summary_to_json(r));

  json aggregate;
  auto stat_json = [](const MetricStat& st) {
    return json{{"mean", st.mean}, {"std", st.std_dev}};
  };
  auto stats_json = [&](const std::vector<MetricStat>& sts) {
    json arr = json::array();
    for (const MetricStat& st : sts) arr.push_back(stat_json(st));
    return arr;
  };
  if (runs.size() >= 2) {
    const AggregateSummary agg = aggregate_over_seeds(runs);
    aggregate = json{{"cumulative_reward", stat_json(agg.cumulative_reward)},
                     {"cumulative_regret", stat_json(agg.cumulative_regret)},
                     {"checkpoint_cum_reward", stats_json(agg.checkpoint_cum_reward)},
                     {"checkpoint_cum_regret", stats_json(agg.checkpoint_cum_regret)},
                     {"action_frequencies", stats_json(agg.action_frequencies)}};
  } else {
    // A single seed has no sample std; report means only.
    const RunSummary& r = runs.front();
    auto solo = [](double v) { return json{{"mean", v}, {"std", nullptr}}; };
    json cp_reward = json::array(), cp_regret = json::array(), freqs = json::array();
    for (double v : r.checkpoint_cum_reward) cp_reward.push_back(solo(v));
    for (double v : r.checkpoint_cum_regret) cp_regret.push_back(solo(v));
    for (double v : r.action_frequencies) freqs.push_back(solo(v));
    aggregate = json{{"cumulative_reward", solo(r.cumulative_reward)},
                     {"cumulative_regret", solo(r.cumulative_regret)},
                     {"checkpoint_cum_reward", cp_reward},
                     {"checkpoint_cum_regret", cp_regret},
                     {"action_frequencies", freqs}};
  }
  return json{{"algorithm", algorithm},
              {"trials", cfg.trials},
              {"checkpoints", cfg.checkpoints},
              {"seeds", cfg.seeds},
              {"actions", actions},
              {"config_hash", config_hash(cfg)},
              {"per_seed", per_seed},
              {"aggregate", aggregate}};
}

}  // namespace detail

// Executes |algorithms| x |seeds| runs (in parallel when jobs > 1; results
// are identical either way) and, if an output directory is configured,
// publishes trial CSVs, per-algorithm summaries, the comparison table, and
// the manifest. Nothing is written unless every run succeeded.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs = 1) {
  cfg.validate();
  const RewardModel model = load_reward_model(cfg.reward_model_path);
  std::unique_ptr<Encoder> encoder = make_encoder(cfg.encoder);

  struct Task {
    std::size_t algo_index;
    RngSeed seed;
  };
  std::vector<Task> tasks;
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
    for (RngSeed seed : cfg.seeds) tasks.push_back(Task{a, seed});
  }

  const std::string hash = config_hash(cfg);
  std::vector<RunOutput> runs(tasks.size());
  auto execute = [&](std::size_t task_index) {
    const Task& task = tasks[task_index];
    const AlgorithmSpec& spec = cfg.algorithms[task.algo_index];
    std::unique_ptr<Policy> policy = make_policy(
        spec.name, spec.params, model.num_actions(), cfg.encoder.embedding_dim);
    TrialLog log = run_single(model, *encoder, *policy, task.seed, cfg.trials);
    RunOutput& out = runs[task_index];
    out.id = RunId{spec.name, task.seed, hash};
    out.summary = accumulate(log, model.num_actions(), cfg.checkpoints,
                             spec.name, task.seed);
    out.log = std::move(log);
  };

  const int workers =
      std::min<int>(jobs, static_cast<int>(tasks.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) execute(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          try {
            execute(i);
          } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
            return;
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  ExperimentResult result;
  result.per_algorithm.resize(cfg.algorithms.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    result.per_algorithm[tasks[i].algo_index].push_back(runs[i].summary);
  }
  result.runs = std::move(runs);

  std::vector<std::string> algo_names;
  for (const AlgorithmSpec& a : cfg.algorithms) algo_names.push_back(a.name);
  result.comparison_csv = render_comparison(algo_names, result.per_algorithm,
                                            cfg.checkpoints, model.actions.labels);

  json run_list = json::array();
  for (const RunOutput& run : result.runs) {
    run_list.push_back(json{{"algorithm", run.id.algorithm},
                            {"seed", run.id.seed},
                            {"trial_file", trial_file_name(run.id.algorithm,
                                                           run.id.seed)}});
  }
  result.manifest = json{{"format", "banditlab-manifest-v1"},
                         {"config_hash", hash},
                         {"identity", experiment_identity(cfg)},
                         {"contexts", model.contexts},
                         {"actions", model.actions.labels},
                         {"runs", run_list}};

  if (!cfg.output.directory.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir = cfg.output.directory;
    fs::create_directories(dir);
    const bool want_csv =
        std::find(cfg.output.formats.begin(), cfg.output.formats.end(), "csv") !=
        cfg.output.formats.end();
    const bool want_json =
        std::find(cfg.output.formats.begin(), cfg.output.formats.end(), "json") !=
        cfg.output.formats.end();
    if (want_csv) {
      for (const RunOutput& run : result.runs) {
        write_text_file((dir / trial_file_name(run.id.algorithm, run.id.seed)).string(),
                        trial_csv(run.log));
      }
    }
    if (want_json) {
      for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
        const json doc = detail::algorithm_summary_json(
            cfg, cfg.algorithms[a].name, result.per_algorithm[a],
            model.actions.labels);
        write_text_file((dir / ("summary_" + cfg.algorithms[a].name + ".json")).string(),
                        doc.dump(2) + "\n");
      }
    }
    write_text_file((dir / "comparison.csv").string(), result.comparison_csv);
    write_text_file((dir / "manifest.json").string(),
                    result.manifest.dump(2) + "\n");
  }
  return result;
}

// Re-renders the comparison table from the manifest and the emitted trial
// CSVs. The result is byte-identical to the comparison.csv the run wrote.
inline std::string render_report(const std::string& output_dir) {
  namespace fs = std::filesystem;
  const fs::path dir = output_dir;
  const json manifest = load_json_file((dir / "manifest.json").string());
  if (field_or<std::string>(manifest, "format", "", "manifest") !=
      "banditlab-manifest-v1") {
    throw ParseError(output_dir + ": not a banditlab output directory");
  }
  const auto actions =
      require_field<std::vector<std::string>>(manifest, "actions", "manifest");
  const json& identity = manifest.at("identity");
  const auto checkpoints =
      require_field<std::vector<int>>(identity, "checkpoints", "manifest");

  std::vector<std::string> algo_order;
  for (const json& a : identity.at("algorithms")) {
    algo_order.push_back(a.at("name").get<std::string>());
  }
  std::vector<std::vector<RunSummary>> per_algorithm(algo_order.size());
  for (const json& run : manifest.at("runs")) {
    const auto algorithm = require_field<std::string>(run, "algorithm", "manifest");
    const auto seed = require_field<RngSeed>(run, "seed", "manifest");
    const auto file = require_field<std::string>(run, "trial_file", "manifest");
    const std::string path = (dir / file).string();
    const TrialLog log = parse_trial_csv(read_text_file(path), path);
    const RunSummary summary =
        accumulate(log, static_cast<int>(actions.size()), checkpoints,
                   algorithm, seed);
    const auto it = std::find(algo_order.begin(), algo_order.end(), algorithm);
    if (it == algo_order.end()) {
      throw ParseError("manifest lists run for unknown algorithm " + algorithm);
    }
    per_algorithm[static_cast<std::size_t>(it - algo_order.begin())].push_back(summary);
  }
  return render_comparison(algo_order, per_algorithm, checkpoints, actions);
}

}  // namespace banditlab
