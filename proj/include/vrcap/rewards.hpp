#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vrcap/core.hpp"
#include "vrcap/taskgen.hpp"
#include "vrcap/vocab.hpp"

namespace vrcap {

struct RewardConfig {
  double iou_threshold = 0.5;
  // 12 for the toy curriculum; 100 reproduces the full-scale setting.
  int length_cutoff = 12;
  double length_weight = 1.0;
  bool case_insensitive_names = true;

  void validate() const;
};

enum class ParseStatus { ok, unparsed, not_applicable };
std::string_view to_string(ParseStatus s);

struct RewardBreakdown {
  double task_reward = 0.0;
  int length_reward = 0;
  double total = 0.0;
  std::vector<std::string> matched_names;
  ParseStatus parse_status = ParseStatus::not_applicable;
  // False for OCT/VLT, whose totals exclude the length term.
  bool length_counted = false;
};

enum class BinaryParse { yes, no, unparsed };

/// First yes/no token, compared case-insensitively on the surface form.
BinaryParse parse_binary_answer(const Vocabulary& vocab, const TokenSequence& output);

/// First run of exactly four coordinate tokens (commas may separate them)
/// that forms an ordered box. Any other token ends a run.
std::optional<BBox> parse_bbox(const Vocabulary& vocab, const TokenSequence& output);

/// Whole-word contiguous match of `name` (split on whitespace) in `words`.
bool contains_name(std::span<const std::string> words, std::string_view name,
                   bool case_insensitive);

/// Gold names that occur in the output, in gold order.
std::vector<std::string> matched_gold_names(const Vocabulary& vocab,
                                            const TokenSequence& output,
                                            std::span<const std::string> gold,
                                            bool case_insensitive);

int reward_oct(const Vocabulary& vocab, const TaskRecord& task, const TokenSequence& output);
int reward_vlt(const Vocabulary& vocab, const TaskRecord& task, const TokenSequence& output,
               const RewardConfig& cfg);
double reward_ict(const Vocabulary& vocab, const TaskRecord& task, const TokenSequence& output,
                  const RewardConfig& cfg);
int reward_length(const TokenSequence& output, const RewardConfig& cfg);

/// total = task_reward + length_weight * length_reward, with the length term
/// only on caption kinds (ICT1, ICTM, DETAIL).
RewardBreakdown score(const Vocabulary& vocab, const TaskRecord& task,
                      const TokenSequence& output, const RewardConfig& cfg);

}  // namespace vrcap
