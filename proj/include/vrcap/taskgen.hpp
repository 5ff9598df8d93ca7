#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vrcap/core.hpp"
#include "vrcap/synthworld.hpp"
#include "vrcap/vocab.hpp"

namespace vrcap {

enum class TaskKind { OCT, VLT, ICT1, ICTM, DETAIL };

inline constexpr std::array<TaskKind, 4> kMixKinds = {
    TaskKind::OCT, TaskKind::VLT, TaskKind::ICT1, TaskKind::ICTM};

std::string_view to_string(TaskKind kind);
TaskKind task_kind_from_string(std::string_view s);
inline bool is_ict_kind(TaskKind k) {
  return k == TaskKind::ICT1 || k == TaskKind::ICTM || k == TaskKind::DETAIL;
}

enum class BinaryAnswer { yes, no };

struct GoldAnswer {
  std::variant<BinaryAnswer, BBox, std::vector<std::string>> value;

  [[nodiscard]] bool is_binary() const { return std::holds_alternative<BinaryAnswer>(value); }
  [[nodiscard]] bool is_box() const { return std::holds_alternative<BBox>(value); }
  [[nodiscard]] bool is_names() const {
    return std::holds_alternative<std::vector<std::string>>(value);
  }
  [[nodiscard]] BinaryAnswer binary() const { return std::get<BinaryAnswer>(value); }
  [[nodiscard]] const BBox& box() const { return std::get<BBox>(value); }
  [[nodiscard]] const std::vector<std::string>& names() const {
    return std::get<std::vector<std::string>>(value);
  }
  bool operator==(const GoldAnswer&) const = default;
};

struct Demonstration {
  std::string name;
  View view;
  std::string info;

  bool operator==(const Demonstration&) const = default;
};

using Query = std::variant<View, Scene>;

struct TaskRecord {
  std::int64_t record_id = 0;
  TaskKind kind = TaskKind::OCT;
  // ICT records built from the detail-prompt subset of the caption bank.
  bool detail = false;
  TokenSequence instruction;
  std::vector<Demonstration> demonstrations;
  Query query;
  GoldAnswer gold;
  // VLT only: the named target and its index in the query scene.
  std::string target_name;
  int target_index = -1;

  [[nodiscard]] const Scene* query_scene() const { return std::get_if<Scene>(&query); }
  [[nodiscard]] const View* query_view() const { return std::get_if<View>(&query); }

  bool operator==(const TaskRecord&) const = default;
};

/// Empty when the record satisfies every structural invariant, otherwise a
/// description of the first violation.
std::optional<std::string> check_record(const TaskRecord& record);

// Instruction template banks. "<name>" is replaced by the target name.
std::span<const std::string_view> oct_templates();
std::span<const std::string_view> vlt_templates();
std::span<const std::string_view> ict_templates();
std::span<const std::string_view> detail_templates();
std::span<const std::string_view> eval_caption_templates();
/// Reasoning-format instructions. Shipped as text only; never sampled.
std::span<const std::string_view> reasoning_templates();

std::string fill_template(std::string_view tmpl, std::string_view name);

/// Unique names for the entities, drawn without replacement from `pool`
/// (the bundled wordlist when empty). Throws ConfigError when the pool is
/// smaller than the entity list.
std::map<int, std::string> assign_names(const std::vector<const Entity*>& entities,
                                        std::uint64_t seed,
                                        std::span<const std::string> pool = {});

struct TaskGenConfig {
  double variation_level = 0.5;
  // Names are drawn on the fly per task from this pool (the vocabulary's
  // name block in training setups).
  std::vector<std::string> name_pool;
};

/// Everything a task builder needs. The referenced objects must outlive it.
struct TaskContext {
  const World& world;
  const Vocabulary& vocab;
  TaskGenConfig config;
};

std::string describe_entity(const Entity& entity, std::string_view name);

TaskRecord make_oct_task(const TaskContext& ctx, bool positive, std::uint64_t seed);
TaskRecord make_vlt_task(const TaskContext& ctx, const Scene& scene,
                         const View& target_view, std::uint64_t seed);
/// Builds a VLT task on a freshly composed scene of 1..max_entities entities.
TaskRecord make_vlt_task(const TaskContext& ctx, std::uint64_t seed);
TaskRecord make_ict_task(const TaskContext& ctx, int m, bool detail, std::uint64_t seed);

struct DatasetConfig {
  std::int64_t total_records = 2000;
  std::map<TaskKind, double> mix = {{TaskKind::OCT, 0.39},
                                    {TaskKind::VLT, 0.30},
                                    {TaskKind::ICT1, 0.21},
                                    {TaskKind::ICTM, 0.10}};
  double oct_positive_ratio = 0.5;
  double ict_warn_threshold = 0.5;
  double detail_prompt_fraction = 0.3;
  double variation_level = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Largest-remainder rounding of total * mix; ties go to the earlier kind.
std::map<TaskKind, std::int64_t> mix_counts(const DatasetConfig& config);

struct DatasetManifest {
  std::int64_t total = 0;
  std::map<TaskKind, std::int64_t> counts;
  std::int64_t detail_count = 0;
  double ict_fraction = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

struct Dataset {
  std::vector<TaskRecord> records;
  DatasetManifest manifest;
};

Dataset build_dataset(const World& world, const Vocabulary& vocab,
                      const DatasetConfig& config);

}  // namespace vrcap
