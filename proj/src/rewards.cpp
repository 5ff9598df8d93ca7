#include "vrcap/rewards.hpp"

#include <cmath>
#include <sstream>

namespace vrcap {

void RewardConfig::validate() const {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0))
    throw ConfigError("rewards: iou_threshold must lie in (0,1]");
  if (length_cutoff < 1) throw ConfigError("rewards: length_cutoff must be >= 1");
  if (!(length_weight >= 0.0) || !std::isfinite(length_weight)) throw ConfigError("rewards: length_weight must be >= 0");
}

std::string_view to_string(ParseStatus s) {
  switch (s) {
    case ParseStatus::ok: return "ok";
    case ParseStatus::unparsed: return "unparsed";
    case ParseStatus::not_applicable: return "n/a";
  }
  return "?";
}

BinaryParse parse_binary_answer(const Vocabulary& vocab, const TokenSequence& output) {
  for (TokenId t : output.content()) {
    const std::string w = to_lower(vocab.surface(t));
    if (w == "yes") return BinaryParse::yes;
    if (w == "no") return BinaryParse::no;
  }
  return BinaryParse::unparsed;
}

std::optional<BBox> parse_bbox(const Vocabulary& vocab, const TokenSequence& output) {
  std::vector<int> run;
  bool last_was_comma = false;
  auto try_run = [&]() -> std::optional<BBox> {
    if (run.size() != 4) return std::nullopt;
    const BBox b{run[0], run[1], run[2], run[3]};
    return b.ordered() ? std::optional<BBox>(b) : std::nullopt;
  };
  for (TokenId t : output.content()) {
    if (vocab.is_coord(t)) {
      run.push_back(vocab.coord_value(t));
      last_was_comma = false;
      continue;
    }
    if (t == vocab.comma() && !run.empty() && !last_was_comma) {
      last_was_comma = true;
      continue;
    }
    if (auto b = try_run()) return b;
    run.clear();
    last_was_comma = false;
  }
  return try_run();
}

bool contains_name(std::span<const std::string> words, std::string_view name,
                   bool case_insensitive) {
  std::vector<std::string> parts;
  {
    std::istringstream is{std::string(name)};
    for (std::string w; is >> w;) parts.push_back(case_insensitive ? to_lower(w) : w);
  }
  if (parts.empty() || parts.size() > words.size()) return false;
  for (std::size_t start = 0; start + parts.size() <= words.size(); ++start) {
    bool hit = true;
    for (std::size_t j = 0; j < parts.size() && hit; ++j) {
      const std::string& w = words[start + j];
      hit = case_insensitive ? to_lower(w) == parts[j] : w == parts[j];
    }
    if (hit) return true;
  }
  return false;
}

std::vector<std::string> matched_gold_names(const Vocabulary& vocab,
                                            const TokenSequence& output,
                                            std::span<const std::string> gold,
                                            bool case_insensitive) {
  const auto words = vocab.words_of(output);
  std::vector<std::string> out;
  for (const auto& g : gold)
    if (contains_name(words, g, case_insensitive)) out.push_back(g);
  return out;
}

namespace {

void require_kind(const TaskRecord& task, bool ok, std::string_view what) {
  if (!ok)
    throw ContractError(std::string(what) + ": wrong task kind " +
                        std::string(to_string(task.kind)));
}

}  // namespace

int reward_oct(const Vocabulary& vocab, const TaskRecord& task, const TokenSequence& output) {
  require_kind(task, task.kind == TaskKind::OCT && task.gold.is_binary(), "reward_oct");
  const BinaryParse p = parse_binary_answer(vocab, output);
  if (p == BinaryParse::unparsed) return 0;
  const bool said_yes = p == BinaryParse::yes;
  return said_yes == (task.gold.binary() == BinaryAnswer::yes) ? 1 : 0;
}

int reward_vlt(const Vocabulary& vocab, const TaskRecord& task, const TokenSequence& output,
               const RewardConfig& cfg) {
  require_kind(task, task.kind == TaskKind::VLT && task.gold.is_box(), "reward_vlt");
  const auto pred = parse_bbox(vocab, output);
  if (!pred) return 0;
  return iou(*pred, task.gold.box()) >= cfg.iou_threshold ? 1 : 0;
}

double reward_ict(const Vocabulary& vocab, const TaskRecord& task, const TokenSequence& output,
                  const RewardConfig& cfg) {
  require_kind(task, is_ict_kind(task.kind) && task.gold.is_names(), "reward_ict");
  const auto& gold = task.gold.names();
  if (gold.empty()) return 0.0;
  const auto hits = matched_gold_names(vocab, output, gold, cfg.case_insensitive_names);
  return static_cast<double>(hits.size()) / static_cast<double>(gold.size());
}

int reward_length(const TokenSequence& output, const RewardConfig& cfg) {
  return static_cast<int>(output.content_length()) >= cfg.length_cutoff ? 1 : 0;
}

RewardBreakdown score(const Vocabulary& vocab, const TaskRecord& task,
                      const TokenSequence& output, const RewardConfig& cfg) {
  RewardBreakdown b;
  b.length_reward = reward_length(output, cfg);
  switch (task.kind) {
    case TaskKind::OCT:
      b.task_reward = reward_oct(vocab, task, output);
      b.parse_status = parse_binary_answer(vocab, output) == BinaryParse::unparsed
                           ? ParseStatus::unparsed
                           : ParseStatus::ok;
      break;
    case TaskKind::VLT:
      b.task_reward = reward_vlt(vocab, task, output, cfg);
      b.parse_status = parse_bbox(vocab, output) ? ParseStatus::ok : ParseStatus::unparsed;
      break;
    case TaskKind::ICT1:
    case TaskKind::ICTM:
    case TaskKind::DETAIL:
      b.matched_names = matched_gold_names(vocab, output, task.gold.names(),
                                           cfg.case_insensitive_names);
      b.task_reward = reward_ict(vocab, task, output, cfg);
      b.length_counted = true;
      break;
  }
  b.total = b.task_reward + (b.length_counted ? cfg.length_weight * b.length_reward : 0.0);
  return b;
}

}  // namespace vrcap
