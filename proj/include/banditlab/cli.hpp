#pragma once

// Command-line front end. Subcommands:
//   run <config>      execute an experiment and emit its outputs
//   validate <config> check a config (and its data files) without running
//   encode --text S   print an embedding as a JSON array, for debugging
//   report <dir>      re-render the comparison table from emitted trial CSVs
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "banditlab/encoders.hpp"
#include "banditlab/harness.hpp"

namespace banditlab::cli {

inline int run_main(int argc, const char* const* argv) {
  CLI::App app{"banditlab - contextual bandit experimentation toolkit"};
  app.require_subcommand(1);

  // run
  std::string run_config_path;
  std::vector<RngSeed> seed_override;
  int trials_override = 0;
  std::string encoder_override;
  std::string output_override;
  int jobs = 1;
  CLI::App* cmd_run = app.add_subcommand("run", "Execute an experiment");
  cmd_run->add_option("config", run_config_path, "Experiment config file")
      ->required();
  cmd_run->add_option("--seed", seed_override,
                      "Replace the config's seed list (repeatable)");
  cmd_run->add_option("--trials", trials_override, "Override the trial count");
  cmd_run->add_option("--encoder", encoder_override,
                      "Override the encoder kind (hash, table, remote)");
  cmd_run->add_option("--output", output_override, "Override the output directory");
  cmd_run->add_option("--jobs", jobs, "Worker threads across runs")
      ->check(CLI::Range(1, 1024));

  // validate
  std::string validate_config_path;
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "Check a config without running");
  cmd_validate->add_option("config", validate_config_path, "Experiment config file")
      ->required();

  // encode
  std::string encode_text;
  std::string encode_config_path;
  EncoderConfig encode_cfg;
  CLI::App* cmd_encode =
      app.add_subcommand("encode", "Print the embedding of a text");
  cmd_encode->add_option("--text", encode_text, "Text to encode")->required();
  cmd_encode->add_option("--config", encode_config_path,
                         "Take the encoder from this experiment config");
  cmd_encode->add_option("--encoder", encode_cfg.kind,
                         "Encoder kind (hash, table, remote)");
  cmd_encode->add_option("--dim", encode_cfg.embedding_dim, "Embedding dimension");
  cmd_encode->add_option("--salt", encode_cfg.hash_salt, "Hash encoder salt");
  cmd_encode->add_option("--table", encode_cfg.table_path,
                         "Embedding table (JSONL) for the table encoder");

  // report
  std::string report_dir;
  CLI::App* cmd_report = app.add_subcommand(
      "report", "Re-render the comparison table from an output directory");
  cmd_report->add_option("dir", report_dir, "Experiment output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_run->parsed()) {
      ExperimentConfig cfg = load_config(run_config_path);
      if (!seed_override.empty()) cfg.seeds = seed_override;
      if (trials_override > 0) cfg.trials = trials_override;
      if (!encoder_override.empty()) cfg.encoder.kind = encoder_override;
      if (!output_override.empty()) cfg.output.directory = output_override;
      cfg.validate();
      const ExperimentResult result = run_experiment(cfg, jobs);
      std::cout << result.comparison_csv;
      if (!cfg.output.directory.empty()) {
        std::cerr << "wrote " << result.runs.size() << " runs to "
                  << cfg.output.directory << "\n";
      }
      return 0;
    }
    if (cmd_validate->parsed()) {
      ExperimentConfig cfg = load_config(validate_config_path);
      cfg.validate();
      const RewardModel model = load_reward_model(cfg.reward_model_path);
      if (cfg.encoder.kind == "table") {
        TableEncoder::load(cfg.encoder.table_path, cfg.encoder.embedding_dim);
      }
      std::cout << "OK: " << validate_config_path << " (" << model.num_contexts()
                << " contexts, " << model.num_actions() << " actions, "
                << cfg.algorithms.size() << " algorithms, " << cfg.seeds.size()
                << " seeds)\n";
      return 0;
    }
    if (cmd_encode->parsed()) {
      EncoderConfig cfg = encode_cfg;
      if (!encode_config_path.empty()) {
        cfg = load_config(encode_config_path).encoder;
      }
      std::unique_ptr<Encoder> encoder = make_encoder(cfg);
      const EmbeddingVector e = encoder->encode(encode_text);
      std::cout << json(std::vector<double>(e.data(), e.data() + e.size())).dump()
                << "\n";
      return 0;
    }
    if (cmd_report->parsed()) {
      std::cout << render_report(report_dir);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // unreachable: a subcommand is required
}

inline int run_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("banditlab");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace banditlab::cli
