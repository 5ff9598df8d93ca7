#include "vrcap/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vrcap {

using nlohmann::json;

void RunConfig::resolve() {
  world.validate();
  if (name_pool_size < world.entities)
    throw ConfigError("world: name_pool_size must be >= entities");
  dataset.seed = derive_seed(seed, {0x64617461ULL});
  dataset.validate();
  rewards.validate();
  policy.init_seed = derive_seed(seed, {0x706f6c69ULL});
  policy.validate();
  grpo.seed = derive_seed(seed, {0x6772706fULL});
  grpo.workers = workers;
  grpo.validate();
  if (checkpoint_every < 0) throw ConfigError("grpo: checkpoint_every must be >= 0");
  if (retrieval.k < 1) throw ConfigError("retrieval: k must be >= 1");
  if (!(retrieval.noise_sigma >= 0.0)) throw ConfigError("retrieval: noise_sigma must be >= 0");
  eval.k = retrieval.k;
  eval.noise_sigma = retrieval.noise_sigma;
  eval.max_len = policy.max_len;
  eval.seed = derive_seed(seed, {0x6576616cULL});
  eval.workers = workers;
  eval.validate();
  for (int m : eval.concept_counts)
    if (m > world.max_entities_per_scene)
      throw ConfigError("eval: concept count exceeds world.max_entities_per_scene");
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

VocabConfig RunConfig::vocab_config() const {
  VocabConfig vc;
  vc.coord_cap = std::max(world.scene_width, world.scene_height);
  vc.names = default_name_pool(name_pool_size);
  return vc;
}

std::uint64_t RunConfig::world_seed() const { return derive_seed(seed, {0x776f726cULL}); }

RunConfig default_run_config() {
  RunConfig c;
  // Toy-scale tuning; the type defaults stay at their documented values.
  c.policy.init_eos_bias = 3.0;
  c.policy.init_word_bias = 3.0;
  c.policy.init_coord_prior = 5.0;
  c.grpo.learning_rate = 3.0;
  c.grpo.freeze_kl_reference = true;
  c.grpo.steps = 3000;
  c.eval.queries_per_count = 150;
  return c;
}

namespace {

// Reads keys out of one JSON object and rejects whatever is left over.
class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError(name_ + ": expected an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(name_ + "." + key + ": " + e.what());
    }
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.contains(k)) throw ConfigError("unknown config key '" + name_ + "." + k + "'");
  }

 private:
  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

json world_json(const RunConfig& c) {
  const auto& w = c.world;
  return {{"entities", w.entities},
          {"categories", w.categories},
          {"attributes", w.attributes},
          {"attrs_per_entity", w.attrs_per_entity},
          {"identity_attrs", w.identity_attrs},
          {"variation_vocab", w.variation_vocab},
          {"max_variation_tokens", w.max_variation_tokens},
          {"scene_width", w.scene_width},
          {"scene_height", w.scene_height},
          {"min_box", w.min_box},
          {"max_box", w.max_box},
          {"max_entities_per_scene", w.max_entities_per_scene},
          {"overlap_cap", w.overlap_cap},
          {"embed_dim", w.embed_dim},
          {"placement_retries", w.placement_retries},
          {"name_pool_size", c.name_pool_size}};
}

void read_world(const json& j, RunConfig& c) {
  Section s(j, "world");
  auto& w = c.world;
  s.get("entities", w.entities);
  s.get("categories", w.categories);
  s.get("attributes", w.attributes);
  s.get("attrs_per_entity", w.attrs_per_entity);
  s.get("identity_attrs", w.identity_attrs);
  s.get("variation_vocab", w.variation_vocab);
  s.get("max_variation_tokens", w.max_variation_tokens);
  s.get("scene_width", w.scene_width);
  s.get("scene_height", w.scene_height);
  s.get("min_box", w.min_box);
  s.get("max_box", w.max_box);
  s.get("max_entities_per_scene", w.max_entities_per_scene);
  s.get("overlap_cap", w.overlap_cap);
  s.get("embed_dim", w.embed_dim);
  s.get("placement_retries", w.placement_retries);
  s.get("name_pool_size", c.name_pool_size);
  s.finish();
}

json dataset_json(const DatasetConfig& d) {
  json mix = json::object();
  for (const auto& [k, f] : d.mix) mix[std::string(to_string(k))] = f;
  return {{"total_records", d.total_records},
          {"mix", mix},
          {"oct_positive_ratio", d.oct_positive_ratio},
          {"ict_warn_threshold", d.ict_warn_threshold},
          {"detail_prompt_fraction", d.detail_prompt_fraction},
          {"variation_level", d.variation_level}};
}

void read_dataset(const json& j, DatasetConfig& d) {
  Section s(j, "dataset");
  s.get("total_records", d.total_records);
  std::map<std::string, double> mix;
  s.get("mix", mix);
  if (j.contains("mix")) {
    d.mix.clear();
    for (const auto& [k, f] : mix) {
      try {
        d.mix[task_kind_from_string(k)] = f;
      } catch (const std::exception&) {
        throw ConfigError("dataset.mix: unknown task kind '" + k + "'");
      }
    }
  }
  s.get("oct_positive_ratio", d.oct_positive_ratio);
  s.get("ict_warn_threshold", d.ict_warn_threshold);
  s.get("detail_prompt_fraction", d.detail_prompt_fraction);
  s.get("variation_level", d.variation_level);
  s.finish();
}

json rewards_json(const RewardConfig& r) {
  return {{"iou_threshold", r.iou_threshold},
          {"length_cutoff", r.length_cutoff},
          {"length_weight", r.length_weight},
          {"case_insensitive_names", r.case_insensitive_names}};
}

void read_rewards(const json& j, RewardConfig& r) {
  Section s(j, "rewards");
  s.get("iou_threshold", r.iou_threshold);
  s.get("length_cutoff", r.length_cutoff);
  s.get("length_weight", r.length_weight);
  s.get("case_insensitive_names", r.case_insensitive_names);
  s.finish();
}

json policy_json(const PolicyConfig& p) {
  return {{"max_len", p.max_len},
          {"init_eos_bias", p.init_eos_bias},
          {"init_word_bias", p.init_word_bias},
          {"init_coord_prior", p.init_coord_prior},
          {"init_scale", p.init_scale},
          {"query_buckets", p.query_buckets}};
}

void read_policy(const json& j, PolicyConfig& p) {
  Section s(j, "policy");
  s.get("max_len", p.max_len);
  s.get("init_eos_bias", p.init_eos_bias);
  s.get("init_word_bias", p.init_word_bias);
  s.get("init_coord_prior", p.init_coord_prior);
  s.get("init_scale", p.init_scale);
  s.get("query_buckets", p.query_buckets);
  s.finish();
}

json grpo_json(const RunConfig& c) {
  const auto& g = c.grpo;
  return {{"group_size", g.group_size},
          {"epsilon", g.epsilon},
          {"beta_kl", g.beta_kl},
          {"learning_rate", g.learning_rate},
          {"steps", g.steps},
          {"batch_tasks_per_step", g.batch_tasks_per_step},
          {"temperature", g.temperature},
          {"adv_eps", g.adv_eps},
          {"snapshot_interval", g.snapshot_interval},
          {"freeze_kl_reference", g.freeze_kl_reference},
          {"checkpoint_every", c.checkpoint_every}};
}

void read_grpo(const json& j, RunConfig& c) {
  Section s(j, "grpo");
  auto& g = c.grpo;
  s.get("group_size", g.group_size);
  s.get("epsilon", g.epsilon);
  s.get("beta_kl", g.beta_kl);
  s.get("learning_rate", g.learning_rate);
  s.get("steps", g.steps);
  s.get("batch_tasks_per_step", g.batch_tasks_per_step);
  s.get("temperature", g.temperature);
  s.get("adv_eps", g.adv_eps);
  s.get("snapshot_interval", g.snapshot_interval);
  s.get("freeze_kl_reference", g.freeze_kl_reference);
  s.get("checkpoint_every", c.checkpoint_every);
  s.finish();
}

json eval_json(const EvalConfig& e) {
  return {{"queries_per_count", e.queries_per_count},
          {"concept_counts", e.concept_counts},
          {"variation_level", e.variation_level},
          {"length_bucket", e.length_bucket}};
}

void read_eval(const json& j, EvalConfig& e) {
  Section s(j, "eval");
  s.get("queries_per_count", e.queries_per_count);
  s.get("concept_counts", e.concept_counts);
  s.get("variation_level", e.variation_level);
  s.get("length_bucket", e.length_bucket);
  s.finish();
}

json value_of(std::string_view text) {
  const json v = json::parse(text, nullptr, false);
  if (!v.is_discarded()) return v;
  return std::string(text);  // bare strings need no quotes
}

void apply_override(json& doc, const std::string& ov) {
  const auto eq = ov.find('=');
  if (eq == std::string::npos) throw ConfigError("--set expects section.key=value, got '" + ov + "'");
  const std::string path = ov.substr(0, eq);
  const auto dot = path.find('.');
  const json value = value_of(std::string_view(ov).substr(eq + 1));
  if (dot == std::string::npos) {
    doc[path] = value;
  } else {
    const std::string sec = path.substr(0, dot);
    if (!doc.contains(sec)) doc[sec] = json::object();
    doc[sec][path.substr(dot + 1)] = value;
  }
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const std::vector<std::string>& overrides) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& ov : overrides) apply_override(doc, ov);

  RunConfig c = default_run_config();
  Section top(doc, "config");
  top.get("seed", c.seed);
  top.get("output_dir", c.output_dir);
  top.get("workers", c.workers);
  for (const char* sec : {"world", "dataset", "rewards", "policy", "grpo", "retrieval", "eval"}) {
    json dummy;
    top.get(sec, dummy);
  }
  top.finish();
  if (doc.contains("world")) read_world(doc["world"], c);
  if (doc.contains("dataset")) read_dataset(doc["dataset"], c.dataset);
  if (doc.contains("rewards")) read_rewards(doc["rewards"], c.rewards);
  if (doc.contains("policy")) read_policy(doc["policy"], c.policy);
  if (doc.contains("grpo")) read_grpo(doc["grpo"], c);
  if (doc.contains("retrieval")) {
    Section s(doc["retrieval"], "retrieval");
    s.get("k", c.retrieval.k);
    s.get("noise_sigma", c.retrieval.noise_sigma);
    s.finish();
  }
  if (doc.contains("eval")) read_eval(doc["eval"], c.eval);
  c.resolve();
  return c;
}

RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), overrides);
}

void apply_env_overrides(RunConfig& cfg) {
  if (const char* d = std::getenv("VRCAP_OUTPUT_DIR"); d && *d) cfg.output_dir = d;
  if (const char* w = std::getenv("VRCAP_WORKERS"); w && *w) {
    char* end = nullptr;
    const long v = std::strtol(w, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) throw ConfigError("VRCAP_WORKERS must be a positive integer");
    cfg.workers = static_cast<int>(v);
  }
  cfg.resolve();
}

std::string to_json(const RunConfig& c, bool include_runtime) {
  json j;
  j["seed"] = c.seed;
  j["world"] = world_json(c);
  j["dataset"] = dataset_json(c.dataset);
  j["rewards"] = rewards_json(c.rewards);
  j["policy"] = policy_json(c.policy);
  j["grpo"] = grpo_json(c);
  j["retrieval"] = {{"k", c.retrieval.k}, {"noise_sigma", c.retrieval.noise_sigma}};
  j["eval"] = eval_json(c.eval);
  if (include_runtime) {
    j["output_dir"] = c.output_dir;
    j["workers"] = c.workers;
  }
  return j.dump(2) + "\n";
}

std::string config_hash(const RunConfig& cfg) { return hex64(fnv1a64(to_json(cfg, false))); }

}  // namespace vrcap
