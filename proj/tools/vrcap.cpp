// vrcap: data generation, GRPO training, evaluation and self-checks for the
// toy personalized-captioning setup. See README.md for a walkthrough.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vrcap/commands.hpp"

using namespace vrcap;

int main(int argc, char** argv) {
  CLI::App app{"Verifiable-reward post-training for personalized captioning (toy scale)"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<int> workers;
  std::string output_dir;
  app.add_option("-c,--config", config_path, "JSON config file (built-in defaults when omitted)");
  app.add_option("--set", overrides, "Override a setting, e.g. --set grpo.steps=100")->take_all();
  app.add_option("--workers", workers, "Parallel rollout/eval workers (results do not change)")
      ->check(CLI::Range(1, 1024));
  app.add_option("-o,--output-dir", output_dir, "Directory for artifacts");

  auto* gen = app.add_subcommand("gen-data", "Write dataset.jsonl, concepts.jsonl and manifest.json");
  auto* tr = app.add_subcommand("train", "Run GRPO on the generated dataset");

  auto* ev = app.add_subcommand("eval", "Greedy captioning evaluation of a checkpoint");
  EvalRequest req;
  std::string mode = "skip";
  ev->add_option("--checkpoint", req.checkpoint, "Checkpoint (default <output-dir>/checkpoint.bin)");
  ev->add_option("--mode", mode, "skip | retrieval | wrong-demo")
      ->check(CLI::IsMember({"skip", "skip-retrieval", "retrieval", "wrong-demo"}));
  ev->add_option("--k", req.k, "Retrieved demonstrations per query")->check(CLI::PositiveNumber);

  auto* ck = app.add_subcommand("check", "Finite-difference, reward and advantage self-checks");
  CheckOptions copts;
  ck->add_option("--instances", copts.gradient_instances, "Random gradient instances")
      ->check(CLI::PositiveNumber);

  auto* rt = app.add_subcommand("retrieve", "Top-k concepts for fresh views of some entities");
  std::vector<int> ids;
  int k = 2;
  rt->add_option("entities", ids, "Entity ids in the query image")->required();
  rt->add_option("--k", k, "Concepts to return")->check(CLI::PositiveNumber);

  auto* orc = app.add_subcommand("make-oracle", "Write the name-copying oracle checkpoint");
  std::string oracle_path;
  orc->add_option("path", oracle_path, "Output checkpoint path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg = config_path.empty() ? parse_run_config("{}", overrides)
                              : load_run_config(config_path, overrides);
    apply_env_overrides(cfg);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (workers) cfg.workers = *workers;
    cfg.resolve();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (*gen) return cmd_gen_data(cfg, std::cout, std::cerr);
  if (*tr) return cmd_train(cfg, std::cout, std::cerr);
  if (*ev) {
    req.mode = eval_mode_from_string(mode);
    return cmd_eval(cfg, req, std::cout, std::cerr);
  }
  if (*ck) {
    copts.seed = cfg.seed;
    return cmd_check(cfg, copts, std::cout, std::cerr);
  }
  if (*rt) return cmd_retrieve(cfg, ids, k, std::cout, std::cerr);
  if (*orc) return cmd_make_oracle(cfg, oracle_path, std::cout, std::cerr);
  return kExitUsage;
}
