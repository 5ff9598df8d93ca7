#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vrcap/core.hpp"
#include "vrcap/rewards.hpp"
#include "vrcap/taskgen.hpp"
#include "vrcap/vocab.hpp"

namespace vrcap {

struct PolicyConfig {
  int max_len = 16;
  // Initial logit bias of <eos>; a positive value mimics a base model that
  // answers tersely.
  double init_eos_bias = 2.0;
  // Logit bias of the plain words: the base model captions generically and
  // rarely says a name.
  double init_word_bias = 0.0;
  // Weight tying the due box coordinate to its token, a weak localization
  // prior standing in for a pretrained model's grounding ability.
  double init_coord_prior = 0.0;
  double init_scale = 0.0;
  int query_buckets = 8;
  std::uint64_t init_seed = 0;

  void validate() const;
};

struct FeatureEntry {
  int index = 0;
  double value = 0.0;
  bool operator==(const FeatureEntry&) const = default;
};

/// Sparse context feature vector.
struct ContextFeatures {
  std::vector<FeatureEntry> entries;
  bool operator==(const ContextFeatures&) const = default;
};

/// Block offsets of the hand-built context features.
class FeatureLayout {
 public:
  FeatureLayout(const Vocabulary& vocab, const PolicyConfig& config);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int max_len() const { return max_len_; }

  // Blocks, in order.
  int bias = 0;
  int kind = 0;          // one-hot TaskKind (5)
  int detail = 0;        // detail-prompt flag (1)
  int instruction = 0;   // normalized word bag over the vocabulary's words
  int demo_names = 0;    // name block: demonstrated names (x visual match)
  int pending_names = 0; // name block: not yet emitted (x visual match)
  int no_pending = 0;    // caption task with every demonstrated name emitted
  int overlap = 0;       // [shared-token fraction, 1 - fraction] of OCT pair
  int target_coord = 0;  // coordinate value due at this step of a VLT answer
  int query = 0;         // hashed bag of query-scene world tokens
  int position = 0;      // one-hot output position
  int prev_token = 0;    // one-hot previous token; last slot is begin-of-sequence

  [[nodiscard]] int instruction_size() const { return instruction_size_; }
  [[nodiscard]] int name_size() const { return name_size_; }
  [[nodiscard]] int coord_size() const { return coord_size_; }
  [[nodiscard]] int query_size() const { return query_size_; }
  [[nodiscard]] int prev_size() const { return prev_size_; }

 private:
  int dim_ = 0;
  int max_len_ = 0;
  int instruction_size_ = 0;
  int name_size_ = 0;
  int coord_size_ = 0;
  int query_size_ = 0;
  int prev_size_ = 0;
};

/// Prefix-independent part of a task's features.
struct StaticContext {
  std::vector<FeatureEntry> entries;
  std::vector<int> demo_slots;  // name-block slots of demonstrated names
  // Visual match of each demonstration with the query, in [0,1]; scales the
  // name features so unmatched references are weaker copy candidates.
  std::vector<double> demo_match;
  std::vector<int> target_box;  // VLT: x1 y1 x2 y2 of the target view
  bool caption_task = false;
};

StaticContext encode_static(const FeatureLayout& layout, const Vocabulary& vocab,
                            const TaskRecord& task);
ContextFeatures step_features(const FeatureLayout& layout, const Vocabulary& vocab,
                              const StaticContext& ctx, std::span<const TokenId> prefix);

/// Features for the next token after `prefix` (empty prefix = begin-of-sequence).
ContextFeatures encode_context(const FeatureLayout& layout, const Vocabulary& vocab,
                               const TaskRecord& task, std::span<const TokenId> prefix);

/// Row-major V x F weight matrix.
struct PolicyParams {
  int vocab_size = 0;
  int feature_dim = 0;
  std::vector<double> theta;

  PolicyParams() = default;
  PolicyParams(int v, int f) : vocab_size(v), feature_dim(f), theta(static_cast<std::size_t>(v) * f, 0.0) {}

  double& at(int v, int f) { return theta[static_cast<std::size_t>(v) * feature_dim + f]; }
  [[nodiscard]] double at(int v, int f) const {
    return theta[static_cast<std::size_t>(v) * feature_dim + f];
  }
  [[nodiscard]] bool all_finite() const;
  bool operator==(const PolicyParams&) const = default;
};

PolicyParams init_params(const FeatureLayout& layout, const Vocabulary& vocab,
                         const PolicyConfig& config);

/// Hand-set weights that greedily emit every demonstrated name once, then
/// stop. Upper-bound reference for grounding metrics.
PolicyParams make_copy_oracle_params(const FeatureLayout& layout, const Vocabulary& vocab);

void logits(const PolicyParams& params, const ContextFeatures& phi, std::span<double> out);

/// softmax(theta . phi / temperature). Throws ContractError for temperature <= 0.
std::vector<double> token_distribution(const PolicyParams& params, const ContextFeatures& phi,
                                       double temperature);

/// One sampled completion with its per-step features cached.
struct Rollout {
  TokenSequence sequence;
  std::vector<double> logprobs_old;
  // Log-probabilities under the KL reference; equal to logprobs_old unless
  // the reference is frozen separately.
  std::vector<double> logprobs_ref;
  RewardBreakdown reward;
  std::vector<ContextFeatures> steps;
};

/// Ancestral sampling until <eos> or max_len tokens; a capped sequence is
/// kept without <eos>.
Rollout sample_sequence(const PolicyParams& params, const FeatureLayout& layout,
                        const Vocabulary& vocab, const TaskRecord& task, double temperature,
                        int max_len, std::uint64_t seed);

/// Argmax decoding; ties go to the lowest token id.
TokenSequence greedy_sequence(const PolicyParams& params, const FeatureLayout& layout,
                              const Vocabulary& vocab, const TaskRecord& task, int max_len);

std::vector<ContextFeatures> encode_steps(const FeatureLayout& layout, const Vocabulary& vocab,
                                          const TaskRecord& task, const TokenSequence& seq);

std::vector<double> sequence_logprobs(const PolicyParams& params,
                                      std::span<const ContextFeatures> steps,
                                      std::span<const TokenId> tokens, double temperature = 1.0);

/// Throws ContractError when a token is outside the vocabulary.
std::vector<double> logprob_sequence(const PolicyParams& params, const FeatureLayout& layout,
                                     const Vocabulary& vocab, const TaskRecord& task,
                                     const TokenSequence& seq, double temperature = 1.0);

/// grad += coeff * d log pi(token | phi) / d theta.
void accumulate_logprob_grad(const PolicyParams& params, const ContextFeatures& phi,
                             TokenId token, double coeff, double temperature,
                             std::span<double> grad);

/// Gradient of sum_t log pi(token_t | phi_t).
std::vector<double> grad_logprob(const PolicyParams& params,
                                 std::span<const ContextFeatures> steps,
                                 std::span<const TokenId> tokens, double temperature = 1.0);
std::vector<double> grad_logprob(const PolicyParams& params, const FeatureLayout& layout,
                                 const Vocabulary& vocab, const TaskRecord& task,
                                 const TokenSequence& seq, double temperature = 1.0);

}  // namespace vrcap
