#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vrcap/core.hpp"
#include "vrcap/policy.hpp"
#include "vrcap/retrieval.hpp"
#include "vrcap/synthworld.hpp"
#include "vrcap/vocab.hpp"

namespace vrcap {

enum class EvalMode { skip_retrieval, retrieval, wrong_demo };
std::string_view to_string(EvalMode m);
/// Accepts "skip", "skip_retrieval", "retrieval", "wrong-demo", "wrong_demo".
EvalMode eval_mode_from_string(std::string_view s);

struct EvalConfig {
  int queries_per_count = 100;
  std::vector<int> concept_counts = {1, 2};
  // Retrieved demonstrations per query; 0 means one per query concept.
  int k = 2;
  double noise_sigma = 0.0;
  double variation_level = 0.5;
  int max_len = 16;
  int length_bucket = 4;
  std::uint64_t seed = 0;
  int workers = 1;

  void validate() const;
};

struct EvalProtocol {
  EvalMode mode = EvalMode::skip_retrieval;
  int k = 2;
};

/// Distinct names of `name_vocab` occurring in the output, in vocabulary
/// order. Uses the reward matcher.
std::vector<std::string> extract_mentions(const Vocabulary& vocab, const TokenSequence& output,
                                          std::span<const std::string> name_vocab,
                                          bool case_insensitive = true);

/// Micro-averaged precision/recall over distinct per-query mentions, plus
/// macro averages. Throws ContractError when the lists differ in length.
GroundingScore grounding_scores(const Vocabulary& vocab, std::span<const TokenSequence> outputs,
                                std::span<const std::vector<std::string>> golds,
                                std::span<const std::string> name_vocab,
                                bool case_insensitive = true);

struct LengthStats {
  bool empty = true;
  double mean = 0.0;
  double median = 0.0;
  int bucket_width = 4;
  // histogram[i] counts lengths in [i*w, (i+1)*w).
  std::vector<long long> histogram;
};

/// Content lengths (end token excluded).
LengthStats length_stats(std::span<const TokenSequence> outputs, int bucket_width = 4);

struct EvalSample {
  int concept_count = 0;
  std::vector<std::string> query_names;
  std::vector<std::string> demo_names;
  std::vector<std::string> scored_gold;
  std::vector<std::string> mentions;
  std::string output;
  std::size_t length = 0;
};

struct EvalReport {
  EvalMode mode = EvalMode::skip_retrieval;
  int k = 0;
  std::uint64_t seed = 0;
  std::string checkpoint_hash;
  std::string note;
  GroundingScore overall;
  std::map<int, GroundingScore> by_count;
  LengthStats lengths;
  double retrieval_top1_accuracy = 0.0;  // retrieval mode only
  std::vector<EvalSample> samples;
};

/// Concept names used in evaluation: one per entity, from the vocabulary's
/// name block.
std::map<int, std::string> eval_names(const World& world, const Vocabulary& vocab,
                                      std::uint64_t seed);

/// Greedy captioning evaluation. `database` is required in retrieval mode.
EvalReport run_protocol(const PolicyParams& params, const FeatureLayout& layout,
                        const Vocabulary& vocab, const World& world,
                        const RetrievalIndex* database, const EvalProtocol& protocol,
                        const EvalConfig& cfg);

std::string report_json(const EvalReport& report);
/// One row per concept count plus an "all" row.
std::string report_csv(const EvalReport& report);

}  // namespace vrcap
