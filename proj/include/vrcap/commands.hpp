#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vrcap/checks.hpp"
#include "vrcap/config.hpp"
#include "vrcap/eval.hpp"

namespace vrcap {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitCheck = 2, kExitDiverged = 3 };

/// Artifact locations under RunConfig::output_dir.
struct ArtifactPaths {
  std::string dir;
  [[nodiscard]] std::string dataset() const { return dir + "/dataset.jsonl"; }
  [[nodiscard]] std::string manifest() const { return dir + "/manifest.json"; }
  [[nodiscard]] std::string concepts() const { return dir + "/concepts.jsonl"; }
  [[nodiscard]] std::string config() const { return dir + "/config.json"; }
  [[nodiscard]] std::string checkpoint() const { return dir + "/checkpoint.bin"; }
  [[nodiscard]] std::string trainlog() const { return dir + "/trainlog.csv"; }
  [[nodiscard]] std::string snapshot(int step) const;
  [[nodiscard]] std::string report_json(EvalMode m) const;
  [[nodiscard]] std::string report_csv(EvalMode m) const;
};

/// World, vocabulary and feature layout rebuilt from a config.
struct Pipeline {
  RunConfig cfg;
  World world;
  Vocabulary vocab;
  FeatureLayout layout;

  explicit Pipeline(RunConfig c);
  [[nodiscard]] ArtifactPaths paths() const { return {cfg.output_dir}; }
};

struct EvalRequest {
  std::string checkpoint;  // empty: <output_dir>/checkpoint.bin
  EvalMode mode = EvalMode::skip_retrieval;
  std::optional<int> k;
};

// Each command reports progress on `out`, problems on `err`, and returns an
// ExitCode. Exceptions from bad configs or files become kExitUsage.
int cmd_gen_data(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_eval(const RunConfig& cfg, const EvalRequest& req, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& cfg, const CheckOptions& options, std::ostream& out, std::ostream& err);
/// Embeds fresh views of the given entities and lists the top-k concepts.
int cmd_retrieve(const RunConfig& cfg, const std::vector<int>& entity_ids, int k,
                 std::ostream& out, std::ostream& err);
/// Writes the copy-oracle checkpoint to `path`.
int cmd_make_oracle(const RunConfig& cfg, const std::string& path, std::ostream& out,
                    std::ostream& err);

}  // namespace vrcap
