#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vrcap/eval.hpp"
#include "vrcap/grpo.hpp"
#include "vrcap/policy.hpp"
#include "vrcap/rewards.hpp"
#include "vrcap/synthworld.hpp"
#include "vrcap/taskgen.hpp"
#include "vrcap/vocab.hpp"

namespace vrcap {

struct RetrievalConfig {
  int k = 2;
  double noise_sigma = 0.0;
};

/// Everything one run needs. Module seeds are derived from `seed`; `workers`
/// and `output_dir` never change results and stay out of the config hash.
struct RunConfig {
  WorldConfig world;
  int name_pool_size = 24;
  DatasetConfig dataset;
  RewardConfig rewards;
  PolicyConfig policy;
  GrpoConfig grpo;
  int checkpoint_every = 500;
  RetrievalConfig retrieval;
  EvalConfig eval;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  int workers = 1;

  /// Validates every section and fills the derived seeds and sizes.
  void resolve();

  [[nodiscard]] VocabConfig vocab_config() const;
  [[nodiscard]] std::uint64_t world_seed() const;
};

/// Settings of the toy curriculum (what configs/default.json holds).
RunConfig default_run_config();

/// Parses a config document on top of default_run_config(). Unknown sections
/// or keys throw ConfigError.
RunConfig parse_run_config(std::string_view json_text,
                           const std::vector<std::string>& overrides = {});
RunConfig load_run_config(const std::string& path,
                          const std::vector<std::string>& overrides = {});

/// Applies VRCAP_OUTPUT_DIR and VRCAP_WORKERS when set.
void apply_env_overrides(RunConfig& cfg);

/// Canonical JSON of the result-affecting settings.
std::string to_json(const RunConfig& cfg, bool include_runtime = false);
std::string config_hash(const RunConfig& cfg);

}  // namespace vrcap
