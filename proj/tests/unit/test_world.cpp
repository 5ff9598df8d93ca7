#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fixture.hpp"

using namespace vrcap;

TEST_CASE("vocabulary layout and encoding") {
  const Vocabulary v(fx::vocab_config(16));
  CHECK(v.surface(kEos) == "<eos>");
  CHECK(v.surface(v.yes()) == "yes");
  CHECK(v.coord_value(v.coord_token(12)) == 12);
  CHECK(v.is_coord(v.coord_token(0)));
  CHECK_FALSE(v.is_coord(v.coord_token(16) + 1));
  CHECK_THROWS_AS((void)v.coord_token(17), ContractError);

  const auto t = v.encode("The box: [2,3, 10,12]. Sinom?");
  const std::vector<TokenId> want{v.lookup("the"), v.lookup("box"), v.lbracket(), v.coord_token(2),
                                  v.comma(), v.coord_token(3), v.comma(), v.coord_token(10),
                                  v.comma(), v.coord_token(12), v.rbracket(), v.name_begin()};
  CHECK(t == want);
  CHECK(v.lookup("SINOM") == v.name_begin());
  CHECK(v.lookup("zebra") == kUnk);
  CHECK(v.name_slot("Jotith") == 1);
  CHECK(v.name_slot("photo") == -1);
  CHECK(v.decode(v.encode_terminated("yes")) == "yes <eos>");
}

TEST_CASE("vocabulary hash tracks surfaces") {
  CHECK(Vocabulary(fx::vocab_config()).hash() == Vocabulary(fx::vocab_config()).hash());
  CHECK(Vocabulary(fx::vocab_config()).hash() != Vocabulary(fx::vocab_config(8, 23)).hash());
  VocabConfig dup = fx::vocab_config();
  dup.names.push_back("image");
  CHECK_THROWS_AS(Vocabulary{dup}, ConfigError);
}

TEST_CASE("gen_world count, determinism and seed sensitivity") {
  WorldConfig wc;
  wc.entities = 1;
  CHECK(gen_world(wc, 0).entities.size() == 1);

  wc.entities = 50;
  CHECK(gen_world(wc, 7) == gen_world(wc, 7));
  int differ = 0;
  for (std::uint64_t s = 0; s < 100; ++s) differ += !(gen_world(wc, s).entities == gen_world(wc, s + 1).entities);
  CHECK(differ == 100);

  wc.attributes = 1;
  CHECK_THROWS_AS(gen_world(wc, 0), ConfigError);
}

TEST_CASE("world entities are well formed with unique identities") {
  WorldConfig wc;
  wc.entities = 40;
  const World w = gen_world(wc, 9);
  std::set<std::vector<int>> ids;
  for (std::size_t i = 0; i < w.entities.size(); ++i) {
    const Entity& e = w.entities[i];
    CHECK(e.entity_id == static_cast<int>(i));
    CHECK(e.category >= 0);
    CHECK(e.category < wc.categories);
    CHECK(static_cast<int>(e.attribute_tokens.size()) == wc.attrs_per_entity);
    std::set<int> distinct(e.attribute_tokens.begin(), e.attribute_tokens.end());
    CHECK(distinct.size() == e.attribute_tokens.size());
    for (int t : e.attribute_tokens) {
      CHECK(t >= wc.attribute_token(0));
      CHECK(t < wc.attribute_token(wc.attributes));
    }
    std::vector<int> key{e.category, e.attribute_tokens[0], e.attribute_tokens[1]};
    CHECK(ids.insert(key).second);
  }
}

TEST_CASE("render_view: canonical at level zero, identity always kept") {
  WorldConfig wc;
  wc.entities = 30;
  const World w = gen_world(wc, 1);
  const Entity& e = w.entities[4];
  const View v0 = render_view(wc, e, 8, 8, 0.0, 123);
  CHECK(v0.visible_tokens == canonical_tokens(e));
  CHECK(v0.variation_tokens.empty());
  CHECK(v0.bbox.within(8, 8));

  long long views = 0;
  for (const Entity& ent : w.entities) {
    const auto canon = canonical_tokens(ent);
    for (std::uint64_t s = 0; s < 350; ++s) {
      const double level = (s % 3 == 0) ? 1.0 : static_cast<double>(s % 11) / 10.0;
      const View v = render_view(wc, ent, 8, 8, level, s);
      ++views;
      REQUIRE(v.identity_size == 1 + wc.identity_attrs);
      for (int k = 0; k < v.identity_size; ++k)
        CHECK(v.visible_tokens[static_cast<std::size_t>(k)] == canon[static_cast<std::size_t>(k)]);
      for (int t : v.visible_tokens)
        CHECK((std::find(canon.begin(), canon.end(), t) != canon.end() || wc.is_variation_token(t)));
      for (int t : v.variation_tokens) CHECK(wc.is_variation_token(t));
      CHECK(v.bbox.within(8, 8));
      CHECK(v.bbox.area() >= wc.min_box * wc.min_box);
    }
  }
  CHECK(views >= 10000);

  const View a = render_view(wc, e, 8, 8, 0.5, 1), b = render_view(wc, e, 8, 8, 0.5, 2);
  CHECK(std::equal(a.identity_tokens().begin(), a.identity_tokens().end(), b.identity_tokens().begin(),
                   b.identity_tokens().end()));
  CHECK_THROWS_AS(render_view(wc, e, 1, 1, 0.0, 0), ConfigError);
  CHECK_THROWS_AS(render_view(wc, e, 8, 8, 1.5, 0), ContractError);
}

TEST_CASE("compose_scene respects the overlap cap") {
  WorldConfig wc;
  wc.entities = 6;
  wc.scene_width = wc.scene_height = 32;
  wc.max_box = 10;
  const World w = gen_world(wc, 2);
  const Scene one = compose_scene(wc, {&w.entities[0]}, 32, 32, 0.5, 1);
  CHECK(one.views.size() == 1);

  for (std::uint64_t s = 0; s < 300; ++s) {
    const Scene sc = compose_scene(wc, {&w.entities[0], &w.entities[1], &w.entities[2]}, 32, 32, 0.5, s);
    REQUIRE(sc.views.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(sc.views[i].entity_id == static_cast<int>(i));
      CHECK(sc.views[i].bbox.within(32, 32));
      for (std::size_t j = i + 1; j < 3; ++j) CHECK(iou(sc.views[i].bbox, sc.views[j].bbox) <= 0.1);
    }
  }
  CHECK(compose_scene(wc, {&w.entities[0], &w.entities[3]}, 32, 32, 0.5, 4) ==
        compose_scene(wc, {&w.entities[0], &w.entities[3]}, 32, 32, 0.5, 4));
}

TEST_CASE("compose_scene fails when boxes cannot fit") {
  WorldConfig wc;
  wc.entities = 4;
  wc.scene_width = wc.scene_height = 4;
  wc.min_box = wc.max_box = 4;
  wc.max_entities_per_scene = 4;
  wc.placement_retries = 50;
  const World w = gen_world(wc, 0);
  std::vector<const Entity*> all;
  for (const auto& e : w.entities) all.push_back(&e);
  CHECK_THROWS_AS(compose_scene(wc, all, 4, 4, 0.0, 0), ConfigError);
  WorldConfig three = wc;
  three.max_entities_per_scene = 3;
  CHECK_THROWS_AS(compose_scene(three, all, 4, 4, 0.0, 0), ConfigError);
}

TEST_CASE("embeddings: zero noise identity, separability, noise scale") {
  WorldConfig wc;
  wc.entities = 1000;
  const World w = gen_world(wc, 5);
  const View a = render_view(wc, w.entities[3], 8, 8, 0.7, 1);
  const View b = render_view(wc, w.entities[3], 8, 8, 0.7, 2);
  CHECK(embed_view(a, 0.0, 1, 16) == embed_view(b, 0.0, 99, 16));

  std::vector<EmbeddingVector> base;
  for (const auto& e : w.entities) base.push_back(embed_view(render_view(wc, e, 8, 8, 0.0, 0), 0.0, 0, 16));
  double min_d = 1e300;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) min_d = std::min(min_d, euclidean_distance(base[i], base[j]));
  CHECK(min_d > 0.0);

  // Monte Carlo mean distance against sigma*sqrt(D) and the exact chi mean
  const double sigma = 0.1;
  const int D = 16;
  double sum = 0;
  const int n = 10000;
  for (int s = 0; s < n; ++s) sum += euclidean_distance(embed_view(a, sigma, static_cast<std::uint64_t>(s), D), base[3]);
  const double mean = sum / n;
  const double chi_mean = sigma * std::sqrt(2.0) * std::exp(std::lgamma((D + 1) / 2.0) - std::lgamma(D / 2.0));
  CHECK(std::abs(mean - sigma * std::sqrt(D)) < 0.1 * sigma * std::sqrt(D));
  CHECK(mean == doctest::Approx(chi_mean).epsilon(0.01));
}
