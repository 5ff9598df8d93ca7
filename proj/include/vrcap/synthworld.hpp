#pragma once

#include <cstdint>
#include <vector>

#include "vrcap/core.hpp"

namespace vrcap {

/// Sizes of the synthetic world. World tokens live in one index space:
///   [0, categories)                                 category tokens
///   [categories, categories + attributes)           attribute tokens
///   [categories + attributes, ... + variation_vocab) pose/lighting tokens
struct WorldConfig {
  int entities = 12;
  int categories = 6;
  int attributes = 16;
  int attrs_per_entity = 3;
  // Leading attributes that, with the category, define identity.
  int identity_attrs = 2;
  int variation_vocab = 6;
  int max_variation_tokens = 2;
  int scene_width = 8;
  int scene_height = 8;
  int min_box = 2;
  int max_box = 4;
  int max_entities_per_scene = 3;
  double overlap_cap = 0.1;
  int embed_dim = 16;
  int placement_retries = 1000;

  void validate() const;
  [[nodiscard]] int token_count() const {
    return categories + attributes + variation_vocab;
  }
  [[nodiscard]] int attribute_token(int a) const { return categories + a; }
  [[nodiscard]] int variation_token(int v) const {
    return categories + attributes + v;
  }
  [[nodiscard]] bool is_variation_token(int t) const {
    return t >= categories + attributes && t < token_count();
  }
};

struct Entity {
  int entity_id = 0;
  int category = 0;
  // Distinct attribute tokens; the first `identity_attrs` are identity-defining.
  std::vector<int> attribute_tokens;

  bool operator==(const Entity&) const = default;
};

struct View {
  int entity_id = 0;
  // Category first, then surviving attributes (perturbed ones replaced by a
  // variation token). The leading `identity_size`
  // entries are the identity-defining tokens.
  std::vector<int> visible_tokens;
  std::vector<int> variation_tokens;
  int identity_size = 0;
  BBox bbox;

  [[nodiscard]] std::span<const int> identity_tokens() const {
    return std::span<const int>(visible_tokens).first(
        static_cast<std::size_t>(identity_size));
  }
  bool operator==(const View&) const = default;
};

struct Scene {
  int width = 0;
  int height = 0;
  std::vector<View> views;

  bool operator==(const Scene&) const = default;
};

struct World {
  WorldConfig config;
  std::uint64_t seed = 0;
  std::vector<Entity> entities;

  [[nodiscard]] const Entity& entity(int entity_id) const;
  bool operator==(const World& o) const {
    return seed == o.seed && entities == o.entities;
  }
};

/// Deterministic in (config, seed). Entity ids are 0..entities-1 and identity
/// token tuples are unique whenever the configured vocabulary allows it.
World gen_world(const WorldConfig& config, std::uint64_t seed);

/// Canonical tokens of an entity: category followed by its attributes.
std::vector<int> canonical_tokens(const Entity& entity);

/// One perturbed view. Level 0 reproduces the canonical tokens with no
/// variation tokens; identity tokens survive any level. Throws ConfigError
/// when the scene cannot hold a minimum-size box.
View render_view(const WorldConfig& config, const Entity& entity, int width,
                 int height, double variation_level, std::uint64_t seed);

/// Places one view per entity with pairwise IoU <= overlap_cap, retrying up to
/// placement_retries times per box. Throws ConfigError when infeasible.
Scene compose_scene(const WorldConfig& config,
                    const std::vector<const Entity*>& entities, int width,
                    int height, double variation_level, std::uint64_t seed);

/// Noise-free embedding of an identity: a seeded Gaussian vector keyed on the
/// entity id and identity tokens.
EmbeddingVector base_embedding(int entity_id, std::span<const int> identity_tokens,
                               int dim);

/// base_embedding plus N(0, noise_sigma^2) per coordinate.
EmbeddingVector embed_view(const View& view, double noise_sigma,
                           std::uint64_t seed, int dim);

}  // namespace vrcap
