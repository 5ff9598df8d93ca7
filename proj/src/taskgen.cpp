#include "vrcap/taskgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "vrcap/names.hpp"

namespace vrcap {

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::OCT: return "OCT";
    case TaskKind::VLT: return "VLT";
    case TaskKind::ICT1: return "ICT1";
    case TaskKind::ICTM: return "ICTM";
    case TaskKind::DETAIL: return "DETAIL";
  }
  return "?";
}

TaskKind task_kind_from_string(std::string_view s) {
  for (TaskKind k : {TaskKind::OCT, TaskKind::VLT, TaskKind::ICT1, TaskKind::ICTM,
                     TaskKind::DETAIL})
    if (to_string(k) == s) return k;
  throw ConfigError("unknown task kind '" + std::string(s) + "'");
}

std::optional<std::string> check_record(const TaskRecord& r) {
  const auto demos = r.demonstrations.size();
  switch (r.kind) {
    case TaskKind::OCT:
      if (demos != 1) return "OCT needs exactly 1 demonstration";
      if (!r.gold.is_binary()) return "OCT gold must be binary";
      if (!r.query_view()) return "OCT query must be a view";
      break;
    case TaskKind::VLT: {
      if (demos != 0) return "VLT takes no demonstrations";
      if (!r.gold.is_box()) return "VLT gold must be a box";
      if (r.target_name.empty()) return "VLT needs a named target";
      const Scene* s = r.query_scene();
      if (!s) return "VLT query must be a scene";
      if (r.target_index < 0 || r.target_index >= static_cast<int>(s->views.size()))
        return "VLT target index outside the scene";
      if (s->views[static_cast<std::size_t>(r.target_index)].bbox != r.gold.box())
        return "VLT gold differs from the target box";
      if (!r.gold.box().within(s->width, s->height)) return "VLT gold box out of bounds";
      break;
    }
    case TaskKind::ICT1:
    case TaskKind::ICTM:
    case TaskKind::DETAIL: {
      if (r.kind == TaskKind::ICT1 && demos != 1) return "ICT1 needs exactly 1 demonstration";
      if (r.kind == TaskKind::ICTM && (demos < 2 || demos > 3))
        return "ICTM needs 2..3 demonstrations";
      if (!r.gold.is_names()) return "ICT gold must be names";
      std::set<std::string> demo_names;
      for (const auto& d : r.demonstrations) demo_names.insert(d.name);
      const auto& gold = r.gold.names();
      if (demo_names.size() != demos) return "demonstration names must be distinct";
      if (std::set<std::string>(gold.begin(), gold.end()) != demo_names)
        return "gold names must equal demonstration names";
      break;
    }
  }
  if (r.gold.is_names()) {
    for (const auto& n : r.gold.names()) {
      const bool in_demo = std::any_of(r.demonstrations.begin(), r.demonstrations.end(),
                                       [&](const Demonstration& d) { return d.name == n; });
      if (!in_demo && n != r.target_name) return "gold name '" + n + "' not introduced";
    }
  }
  if (!r.instruction.terminated()) return "instruction must end with <eos>";
  return std::nullopt;
}

std::map<int, std::string> assign_names(const std::vector<const Entity*>& entities,
                                        std::uint64_t seed,
                                        std::span<const std::string> pool) {
  if (entities.empty()) throw ContractError("assign_names: no entities");
  std::vector<std::string_view> source;
  if (pool.empty()) {
    const auto list = name_wordlist();
    source.assign(list.begin(), list.end());
  } else {
    source.assign(pool.begin(), pool.end());
  }
  if (entities.size() > source.size())
    throw ConfigError("assign_names: wordlist exhausted (" +
                      std::to_string(entities.size()) + " entities, " +
                      std::to_string(source.size()) + " names)");
  std::vector<std::size_t> order(source.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(derive_seed(seed, {0x6e616d6573ULL}));
  // Partial Fisher-Yates: only the first |entities| slots are needed.
  for (std::size_t i = 0; i < entities.size(); ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  std::map<int, std::string> out;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (!out.emplace(entities[i]->entity_id, std::string(source[order[i]])).second)
      throw ContractError("assign_names: duplicate entity id");
  }
  return out;
}

std::string describe_entity(const Entity& entity, std::string_view name) {
  std::ostringstream os;
  os << name << " is an object of category " << entity.category
     << " with attributes";
  for (int t : entity.attribute_tokens) os << ' ' << t;
  os << '.';
  return os.str();
}

namespace {

std::vector<const Entity*> pick_entities(const World& world, std::size_t m,
                                         std::mt19937_64& rng) {
  std::vector<std::size_t> idx(world.entities.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  std::vector<const Entity*> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(&world.entities[idx[i]]);
  return out;
}

std::string_view pick_template(std::span<const std::string_view> bank,
                               std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, bank.size() - 1);
  return bank[d(rng)];
}

std::span<const std::string> pool_of(const TaskContext& ctx) {
  return ctx.config.name_pool;
}

}  // namespace

TaskRecord make_oct_task(const TaskContext& ctx, bool positive, std::uint64_t seed) {
  const World& world = ctx.world;
  if (!positive && world.entities.size() < 2)
    throw ConfigError("make_oct_task: negative pairs need >= 2 entities");
  std::mt19937_64 rng(derive_seed(seed, {0x6f6374ULL}));
  const auto chosen = pick_entities(world, positive ? 1 : 2, rng);
  const Entity& demo_entity = *chosen[0];
  const Entity& query_entity = positive ? *chosen[0] : *chosen[1];
  const auto names = assign_names({&demo_entity}, derive_seed(seed, {1}), pool_of(ctx));
  const std::string& name = names.at(demo_entity.entity_id);
  const auto& wc = world.config;

  TaskRecord r;
  r.kind = TaskKind::OCT;
  r.demonstrations.push_back(
      {name,
       render_view(wc, demo_entity, wc.scene_width, wc.scene_height,
                   ctx.config.variation_level, derive_seed(seed, {2})),
       describe_entity(demo_entity, name)});
  r.query = render_view(wc, query_entity, wc.scene_width, wc.scene_height,
                        ctx.config.variation_level, derive_seed(seed, {3}));
  r.gold.value = positive ? BinaryAnswer::yes : BinaryAnswer::no;
  r.instruction = ctx.vocab.encode_terminated(fill_template(pick_template(oct_templates(), rng), name));
  return r;
}

TaskRecord make_vlt_task(const TaskContext& ctx, const Scene& scene,
                         const View& target_view, std::uint64_t seed) {
  const auto it = std::find(scene.views.begin(), scene.views.end(), target_view);
  if (it == scene.views.end()) throw ContractError("make_vlt_task: target not in scene");
  std::mt19937_64 rng(derive_seed(seed, {0x766c74ULL}));
  const Entity& target = ctx.world.entity(target_view.entity_id);
  const auto names = assign_names({&target}, derive_seed(seed, {1}), pool_of(ctx));

  TaskRecord r;
  r.kind = TaskKind::VLT;
  r.target_name = names.at(target.entity_id);
  r.target_index = static_cast<int>(it - scene.views.begin());
  r.query = scene;
  r.gold.value = target_view.bbox;
  r.instruction = ctx.vocab.encode_terminated(
      fill_template(pick_template(vlt_templates(), rng), r.target_name));
  return r;
}

TaskRecord make_vlt_task(const TaskContext& ctx, std::uint64_t seed) {
  const auto& wc = ctx.world.config;
  std::mt19937_64 rng(derive_seed(seed, {0x766c7473ULL}));
  const int max_n = std::min<int>(wc.max_entities_per_scene,
                                  static_cast<int>(ctx.world.entities.size()));
  const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
  const auto chosen = pick_entities(ctx.world, static_cast<std::size_t>(n), rng);
  const Scene scene = compose_scene(wc, chosen, wc.scene_width, wc.scene_height,
                                    ctx.config.variation_level, derive_seed(seed, {2}));
  const auto t = std::uniform_int_distribution<std::size_t>(0, scene.views.size() - 1)(rng);
  return make_vlt_task(ctx, scene, scene.views[t], derive_seed(seed, {3}));
}

TaskRecord make_ict_task(const TaskContext& ctx, int m, bool detail, std::uint64_t seed) {
  if (m < 1 || m > 3)
    throw ContractError("make_ict_task: at most 3 reference images per query (m=" +
                        std::to_string(m) + ")");
  const World& world = ctx.world;
  if (static_cast<std::size_t>(m) > world.entities.size())
    throw ConfigError("make_ict_task: m exceeds entity count");
  std::mt19937_64 rng(derive_seed(seed, {0x696374ULL}));
  const auto chosen = pick_entities(world, static_cast<std::size_t>(m), rng);
  const auto names = assign_names(chosen, derive_seed(seed, {1}), pool_of(ctx));
  const auto& wc = world.config;

  TaskRecord r;
  r.kind = m == 1 ? TaskKind::ICT1 : TaskKind::ICTM;
  r.detail = detail;
  std::vector<std::string> gold;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const Entity& e = *chosen[i];
    const std::string& name = names.at(e.entity_id);
    r.demonstrations.push_back(
        {name,
         render_view(wc, e, wc.scene_width, wc.scene_height, ctx.config.variation_level,
                     derive_seed(seed, {2, i})),
         describe_entity(e, name)});
    gold.push_back(name);
  }
  r.query = compose_scene(wc, chosen, wc.scene_width, wc.scene_height,
                          ctx.config.variation_level, derive_seed(seed, {3}));
  r.gold.value = std::move(gold);
  const auto bank = detail ? detail_templates() : ict_templates();
  r.instruction = ctx.vocab.encode_terminated(std::string(pick_template(bank, rng)));
  return r;
}

void DatasetConfig::validate() const {
  if (total_records < 0 || total_records > 1'000'000'000)
    throw ConfigError("dataset: total_records must lie in [0, 1e9]");
  double sum = 0.0;
  for (const auto& [kind, f] : mix) {
    if (kind == TaskKind::DETAIL)
      throw ConfigError("dataset: DETAIL is a flag on ICT records, not a mix entry");
    if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("dataset: mix fractions must lie in [0,1]");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("dataset: mix fractions must sum to 1");
  for (double f : {oct_positive_ratio, ict_warn_threshold, detail_prompt_fraction,
                   variation_level})
    if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("dataset: ratios must lie in [0,1]");
}

std::map<TaskKind, std::int64_t> mix_counts(const DatasetConfig& config) {
  config.validate();
  // Fractions are taken in units of 1e-9 so remainders compare exactly; a
  // float remainder can put 147 where 148 belongs.
  constexpr std::int64_t kUnit = 1'000'000'000;
  std::map<TaskKind, std::int64_t> counts;
  std::vector<std::pair<std::int64_t, TaskKind>> remainders;
  std::int64_t assigned = 0;
  for (TaskKind k : kMixKinds) {
    const auto it = config.mix.find(k);
    const auto units = std::llround((it == config.mix.end() ? 0.0 : it->second) * kUnit);
    const std::int64_t scaled = config.total_records * units;
    counts[k] = scaled / kUnit;
    assigned += counts[k];
    remainders.emplace_back(scaled % kUnit, k);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < config.total_records; ++i, ++assigned)
    ++counts[remainders[i % remainders.size()].second];
  return counts;
}

Dataset build_dataset(const World& world, const Vocabulary& vocab,
                      const DatasetConfig& config) {
  const auto counts = mix_counts(config);
  const auto n_entities = static_cast<std::int64_t>(world.entities.size());
  const int max_scene = world.config.max_entities_per_scene;
  if (counts.at(TaskKind::ICTM) > 0 && (n_entities < 2 || max_scene < 2))
    throw ConfigError("dataset: multi-ICT needs >= 2 entities per world and scene");
  if (counts.at(TaskKind::OCT) > 0 && config.oct_positive_ratio < 1.0 && n_entities < 2)
    throw ConfigError("dataset: negative OCT pairs need >= 2 entities");

  std::vector<std::string> pool;
  for (std::size_t i = 0; i < vocab.name_count(); ++i)
    pool.push_back(vocab.surface(vocab.name_begin() + static_cast<TokenId>(i)));
  if (pool.empty()) throw ConfigError("dataset: vocabulary has no name tokens");
  const std::int64_t max_m = std::min<std::int64_t>({3, n_entities, max_scene});
  if (static_cast<std::int64_t>(pool.size()) < max_m)
    throw ConfigError("dataset: name pool smaller than the largest demonstration set");

  TaskContext ctx{world, vocab, {config.variation_level, pool}};

  std::vector<TaskKind> kinds;
  for (TaskKind k : kMixKinds) kinds.insert(kinds.end(), static_cast<std::size_t>(counts.at(k)), k);
  std::mt19937_64 rng(derive_seed(config.seed, {0x73687566ULL}));
  std::shuffle(kinds.begin(), kinds.end(), rng);

  Dataset ds;
  ds.records.reserve(kinds.size());
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const std::uint64_t s = derive_seed(config.seed, {0x726563ULL, i});
    std::mt19937_64 local(s);
    TaskRecord r;
    switch (kinds[i]) {
      case TaskKind::OCT:
        r = make_oct_task(ctx, u01(local) < config.oct_positive_ratio, s);
        break;
      case TaskKind::VLT:
        r = make_vlt_task(ctx, s);
        break;
      case TaskKind::ICT1:
        r = make_ict_task(ctx, 1, u01(local) < config.detail_prompt_fraction, s);
        break;
      case TaskKind::ICTM: {
        const int m = static_cast<int>(std::uniform_int_distribution<std::int64_t>(2, max_m)(local));
        r = make_ict_task(ctx, m, u01(local) < config.detail_prompt_fraction, s);
        break;
      }
      case TaskKind::DETAIL:
        break;
    }
    r.record_id = static_cast<std::int64_t>(i);
    if (r.detail) ++ds.manifest.detail_count;
    ds.records.push_back(std::move(r));
  }

  auto& man = ds.manifest;
  man.total = static_cast<std::int64_t>(ds.records.size());
  man.counts = counts;
  man.seed = config.seed;
  const double ict = config.total_records > 0
                         ? static_cast<double>(counts.at(TaskKind::ICT1) + counts.at(TaskKind::ICTM)) /
                               static_cast<double>(config.total_records)
                         : 0.0;
  man.ict_fraction = ict;
  if (ict > config.ict_warn_threshold) {
    std::ostringstream os;
    os << "ICT fraction " << ict << " exceeds " << config.ict_warn_threshold
       << "; RL post-training tends to fail when identity instructions dominate";
    man.warnings.push_back(os.str());
  }
  return ds;
}

}  // namespace vrcap
