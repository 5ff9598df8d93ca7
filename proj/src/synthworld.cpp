#include "vrcap/synthworld.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace vrcap {

void WorldConfig::validate() const {
  if (entities < 1) throw ConfigError("world: entities must be >= 1");
  if (categories < 2 || attributes < 2 || variation_vocab < 2)
    throw ConfigError("world: vocabulary sizes must be >= 2");
  if (attrs_per_entity < 1 || attrs_per_entity > attributes)
    throw ConfigError("world: attrs_per_entity out of range");
  if (identity_attrs < 0 || identity_attrs > attrs_per_entity)
    throw ConfigError("world: identity_attrs out of range");
  if (max_variation_tokens < 0)
    throw ConfigError("world: max_variation_tokens must be >= 0");
  if (scene_width < 1 || scene_height < 1)
    throw ConfigError("world: scene dimensions must be >= 1");
  if (min_box < 1 || max_box < min_box)
    throw ConfigError("world: need 1 <= min_box <= max_box");
  if (max_entities_per_scene < 1)
    throw ConfigError("world: max_entities_per_scene must be >= 1");
  if (!(overlap_cap >= 0.0 && overlap_cap <= 1.0))
    throw ConfigError("world: overlap_cap must lie in [0,1]");
  if (embed_dim < 1) throw ConfigError("world: embed_dim must be >= 1");
  if (placement_retries < 1)
    throw ConfigError("world: placement_retries must be >= 1");
}

const Entity& World::entity(int entity_id) const {
  if (entity_id < 0 || static_cast<std::size_t>(entity_id) >= entities.size())
    throw ContractError("world: unknown entity id " + std::to_string(entity_id));
  return entities[static_cast<std::size_t>(entity_id)];
}

World gen_world(const WorldConfig& config, std::uint64_t seed) {
  config.validate();
  World world{config, seed, {}};
  std::mt19937_64 rng(derive_seed(seed, {0x776f726c64ULL}));
  std::uniform_int_distribution<int> cat(0, config.categories - 1);

  std::vector<int> pool(static_cast<std::size_t>(config.attributes));
  std::set<std::vector<int>> identities;
  for (int id = 0; id < config.entities; ++id) {
    Entity e;
    e.entity_id = id;
    // A few redraws keep identity tuples unique in small worlds; large worlds
    // may exhaust the tuple space, in which case duplicates are allowed.
    for (int attempt = 0; attempt < 64; ++attempt) {
      e.category = cat(rng);
      std::iota(pool.begin(), pool.end(), 0);
      std::shuffle(pool.begin(), pool.end(), rng);
      e.attribute_tokens.clear();
      for (int k = 0; k < config.attrs_per_entity; ++k)
        e.attribute_tokens.push_back(config.attribute_token(pool[static_cast<std::size_t>(k)]));
      std::vector<int> key{e.category};
      key.insert(key.end(), e.attribute_tokens.begin(),
                 e.attribute_tokens.begin() + config.identity_attrs);
      if (identities.insert(key).second) break;
    }
    world.entities.push_back(std::move(e));
  }
  return world;
}

std::vector<int> canonical_tokens(const Entity& entity) {
  std::vector<int> out{entity.category};
  out.insert(out.end(), entity.attribute_tokens.begin(),
             entity.attribute_tokens.end());
  return out;
}

namespace {

BBox random_box(const WorldConfig& config, int width, int height,
                std::mt19937_64& rng) {
  const int max_w = std::min(config.max_box, width);
  const int max_h = std::min(config.max_box, height);
  if (max_w < config.min_box || max_h < config.min_box)
    throw ConfigError("scene too small for a " + std::to_string(config.min_box) +
                      "-cell box");
  const int w = std::uniform_int_distribution<int>(config.min_box, max_w)(rng);
  const int h = std::uniform_int_distribution<int>(config.min_box, max_h)(rng);
  const int x = std::uniform_int_distribution<int>(0, width - w)(rng);
  const int y = std::uniform_int_distribution<int>(0, height - h)(rng);
  return {x, y, x + w, y + h};
}

}  // namespace

View render_view(const WorldConfig& config, const Entity& entity, int width,
                 int height, double variation_level, std::uint64_t seed) {
  if (!(variation_level >= 0.0 && variation_level <= 1.0))
    throw ContractError("render_view: variation_level must lie in [0,1]");
  std::mt19937_64 rng(derive_seed(seed, {static_cast<std::uint64_t>(entity.entity_id)}));
  View view;
  view.entity_id = entity.entity_id;
  view.bbox = random_box(config, width, height, rng);

  const int id_attrs = std::min<int>(config.identity_attrs,
                                     static_cast<int>(entity.attribute_tokens.size()));
  view.identity_size = 1 + id_attrs;
  view.visible_tokens.push_back(entity.category);
  for (int k = 0; k < id_attrs; ++k)
    view.visible_tokens.push_back(entity.attribute_tokens[static_cast<std::size_t>(k)]);

  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> var(0, config.variation_vocab - 1);
  for (std::size_t k = static_cast<std::size_t>(id_attrs);
       k < entity.attribute_tokens.size(); ++k) {
    const double r = u01(rng);
    if (r < variation_level / 2.0) continue;  // occluded
    if (r < variation_level) {
      // seen under changed pose/lighting: the attribute reads as a variation token
      const int t = config.variation_token(var(rng));
      if (std::find(view.visible_tokens.begin(), view.visible_tokens.end(), t) ==
          view.visible_tokens.end())
        view.visible_tokens.push_back(t);
      continue;
    }
    view.visible_tokens.push_back(entity.attribute_tokens[k]);
  }

  const int n_var = static_cast<int>(
      std::lround(variation_level * config.max_variation_tokens));
  for (int k = 0; k < n_var; ++k)
    view.variation_tokens.push_back(config.variation_token(var(rng)));
  return view;
}

Scene compose_scene(const WorldConfig& config,
                    const std::vector<const Entity*>& entities, int width,
                    int height, double variation_level, std::uint64_t seed) {
  if (entities.empty()) throw ContractError("compose_scene: no entities");
  if (static_cast<int>(entities.size()) > config.max_entities_per_scene)
    throw ConfigError("compose_scene: more entities than max_entities_per_scene");
  Scene scene{width, height, {}};
  for (std::size_t i = 0; i < entities.size(); ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < config.placement_retries && !placed; ++attempt) {
      View v = render_view(config, *entities[i], width, height, variation_level,
                           derive_seed(seed, {i, static_cast<std::uint64_t>(attempt)}));
      placed = std::all_of(scene.views.begin(), scene.views.end(), [&](const View& o) {
        return iou(o.bbox, v.bbox) <= config.overlap_cap;
      });
      if (placed) scene.views.push_back(std::move(v));
    }
    if (!placed)
      throw ConfigError("compose_scene: could not place " +
                        std::to_string(entities.size()) + " boxes on a " +
                        std::to_string(width) + "x" + std::to_string(height) +
                        " grid");
  }
  return scene;
}

EmbeddingVector base_embedding(int entity_id, std::span<const int> identity_tokens,
                               int dim) {
  std::uint64_t key = derive_seed(0x656d626564ULL, {static_cast<std::uint64_t>(entity_id)});
  for (int t : identity_tokens) key = derive_seed(key, {static_cast<std::uint64_t>(t)});
  std::mt19937_64 rng(key);
  std::normal_distribution<double> n01(0.0, 1.0);
  EmbeddingVector e;
  e.values.resize(static_cast<std::size_t>(dim));
  for (double& v : e.values) v = n01(rng);
  return e;
}

EmbeddingVector embed_view(const View& view, double noise_sigma,
                           std::uint64_t seed, int dim) {
  if (!std::isfinite(noise_sigma) || noise_sigma < 0.0)
    throw ContractError("embed_view: noise_sigma must be finite and >= 0");
  EmbeddingVector e = base_embedding(view.entity_id, view.identity_tokens(), dim);
  if (noise_sigma > 0.0) {
    std::mt19937_64 rng(derive_seed(seed, {static_cast<std::uint64_t>(view.entity_id)}));
    std::normal_distribution<double> noise(0.0, noise_sigma);
    for (double& v : e.values) v += noise(rng);
  }
  return e;
}

}  // namespace vrcap
