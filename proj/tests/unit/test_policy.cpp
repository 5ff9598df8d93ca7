#include <doctest.h>

#include <cmath>
#include <random>

#include "fixture.hpp"
#include "vrcap/checks.hpp"

using namespace vrcap;

namespace {

double ref_total(const PolicyParams& p, const GradientInstance& g, double T) {
  double s = 0;
  for (std::size_t t = 0; t < g.tokens.size(); ++t) s += fx::ref_logprob(p, g.steps[t], g.tokens[t], T);
  return s;
}

std::vector<ContextFeatures> steps_of(const fx::Toy& t, const TaskRecord& r, const TokenSequence& s) {
  return encode_steps(t.layout, t.vocab, r, s);
}

}  // namespace

TEST_CASE("feature layout covers every block") {
  fx::Toy t;
  const auto& L = t.layout;
  CHECK(L.bias == 0);
  CHECK(L.prev_token + L.prev_size() == L.dim());
  CHECK(L.prev_size() == static_cast<int>(t.vocab.size()) + 1);
  CHECK(L.coord_size() == t.vocab.coord_cap() + 1);
}

TEST_CASE("context features are deterministic and track names") {
  fx::Toy t;
  const auto r = make_ict_task(t.ctx(), 1, false, 2);
  const std::vector<TokenId> prefix{t.vocab.lookup("a")};
  CHECK(encode_context(t.layout, t.vocab, r, prefix) == encode_context(t.layout, t.vocab, r, prefix));

  auto other = r;
  const std::string other_name = r.demonstrations[0].name == "Sinom" ? "Tose" : "Sinom";
  other.demonstrations[0].name = other_name;
  other.gold.value = std::vector<std::string>{other_name};
  auto slots_of = [&](const TaskRecord& x) {
    std::vector<int> s;
    for (const auto& e : encode_context(t.layout, t.vocab, x, {}).entries)
      if (e.index >= t.layout.demo_names && e.index < t.layout.demo_names + t.layout.name_size())
        s.push_back(e.index - t.layout.demo_names);
    return s;
  };
  CHECK(slots_of(r) == std::vector<int>{t.vocab.name_slot(r.demonstrations[0].name)});
  CHECK(slots_of(other) == std::vector<int>{t.vocab.name_slot(other_name)});

  auto bare = r;
  bare.instruction = TokenSequence{{kEos}};
  for (const auto& e : encode_context(t.layout, t.vocab, bare, {}).entries) {
    CHECK_FALSE((e.index >= t.layout.instruction && e.index < t.layout.instruction + t.layout.instruction_size()));
  }
  // begin-of-sequence uses the reserved slot, not a vocabulary token
  const auto bos = encode_context(t.layout, t.vocab, r, {});
  CHECK(bos.entries.back().index == t.layout.prev_token + t.layout.prev_size() - 1);
}

TEST_CASE("token distribution basics") {
  fx::Toy t;
  const auto r = make_oct_task(t.ctx(), true, 1);
  const auto phi = encode_context(t.layout, t.vocab, r, {});
  PolicyParams zero(static_cast<int>(t.vocab.size()), t.layout.dim());
  for (double p : token_distribution(zero, phi, 1.0)) CHECK(p == doctest::Approx(1.0 / t.vocab.size()).epsilon(1e-12));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  PolicyParams p = zero;
  for (double& x : p.theta) x = u(rng);
  const auto hot = token_distribution(p, phi, 1e4);
  for (double q : hot) CHECK(std::abs(q - 1.0 / t.vocab.size()) < 1e-3);

  const auto before = token_distribution(p, phi, 1.0);
  PolicyParams bumped = p;
  bumped.at(7, t.layout.bias) += 0.5;  // bias feature is always on
  CHECK(token_distribution(bumped, phi, 1.0)[7] > before[7]);
  CHECK_THROWS_AS(token_distribution(p, phi, 0.0), ContractError);

  for (int i = 0; i < 200; ++i) {
    for (double& x : p.theta) x = 8 * u(rng);
    const auto d = token_distribution(p, phi, 0.3 + i * 0.01);
    double s = 0;
    for (double q : d) {
      CHECK(q >= 0.0);
      s += q;
    }
    CHECK(std::abs(s - 1.0) < 1e-9);
  }
}

TEST_CASE("sampling is seeded and consistent with rescoring") {
  fx::Toy t;
  auto params = init_params(t.layout, t.vocab, t.pc);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n(0, 0.5);
  for (double& x : params.theta) x += n(rng);
  const auto r = make_ict_task(t.ctx(), 2, false, 3);
  const auto a = sample_sequence(params, t.layout, t.vocab, r, 1.0, 16, 42);
  const auto b = sample_sequence(params, t.layout, t.vocab, r, 1.0, 16, 42);
  CHECK(a.sequence == b.sequence);
  CHECK(a.logprobs_old == b.logprobs_old);
  CHECK(a.logprobs_old.size() == a.sequence.tokens.size());

  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto ro = sample_sequence(params, t.layout, t.vocab, r, 1.0, 6, s);
    REQUIRE(ro.sequence.valid(t.vocab.size()));
    REQUIRE(ro.sequence.tokens.size() <= 6);
    REQUIRE(ro.steps == steps_of(t, r, ro.sequence));
    const auto again = logprob_sequence(params, t.layout, t.vocab, r, ro.sequence);
    for (std::size_t i = 0; i < again.size(); ++i) {
      REQUIRE(std::abs(again[i] - ro.logprobs_old[i]) <= 1e-12);
      REQUIRE(ro.logprobs_old[i] <= 0.0);
    }
  }
  const auto one = sample_sequence(params, t.layout, t.vocab, r, 1.0, 1, 5);
  CHECK(one.sequence.tokens.size() == 1);
  CHECK(one.logprobs_old.size() == 1);

  TokenSequence bad{{static_cast<TokenId>(t.vocab.size()), kEos}};
  CHECK_THROWS_AS(logprob_sequence(params, t.layout, t.vocab, r, bad), ContractError);
}

TEST_CASE("zero parameters give uniform log probabilities") {
  fx::Toy t;
  const PolicyParams zero(static_cast<int>(t.vocab.size()), t.layout.dim());
  const auto r = make_vlt_task(t.ctx(), 3);
  const auto lp = logprob_sequence(zero, t.layout, t.vocab, r, fx::seq(t.vocab, "[1,2,3,4]"));
  for (double x : lp) CHECK(x == doctest::Approx(-std::log(static_cast<double>(t.vocab.size()))).epsilon(1e-12));

  auto params = init_params(t.layout, t.vocab, t.pc);
  params.at(9, 3) = 1.3;
  double total = 0;
  for (TokenId v = 0; v < static_cast<TokenId>(t.vocab.size()); ++v) {
    TokenSequence s{{v}};
    if (v != kEos) s.tokens.push_back(kEos);
    total += std::exp(logprob_sequence(params, t.layout, t.vocab, r, s)[0]);
  }
  CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("sampled first tokens follow the distribution (chi-square)") {
  // 14-token vocabulary so every cell has a healthy expected count
  VocabConfig vc;
  vc.coord_cap = 1;
  vc.words = {"a", "photo"};
  vc.names = {"Ann", "Bo", "Cy"};
  const Vocabulary v(vc);
  REQUIRE(v.size() == 14);
  PolicyConfig pc;
  const FeatureLayout L(v, pc);
  WorldConfig wc;
  const World w = gen_world(wc, 0);
  const TaskContext ctx{w, v, {0.5, vc.names}};
  const auto r = make_ict_task(ctx, 1, false, 0);

  for (int trial = 0; trial < 2; ++trial) {
    PolicyParams p(static_cast<int>(v.size()), L.dim());
    if (trial == 1) {
      std::mt19937_64 rng(13);
      std::normal_distribution<double> n(0, 0.7);
      for (double& x : p.theta) x = n(rng);
    }
    const auto probs = token_distribution(p, encode_context(L, v, r, {}), 1.0);
    std::vector<double> counts(v.size(), 0.0);
    const int N = 100000;
    for (int i = 0; i < N; ++i)
      ++counts[static_cast<std::size_t>(sample_sequence(p, L, v, r, 1.0, 1, static_cast<std::uint64_t>(i)).sequence.tokens[0])];
    double chi2 = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double e = N * probs[k];
      chi2 += (counts[k] - e) * (counts[k] - e) / e;
      if (trial == 0) CHECK(std::abs(counts[k] - e) < 3 * std::sqrt(e * (1 - probs[k])) + 1);
    }
    CHECK(chi2 < 34.53);  // df = 13, p = 0.001
  }
}

TEST_CASE("logprob gradient matches central differences") {
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    auto g = random_gradient_instance(12, 20, 8, 1000 + static_cast<std::uint64_t>(i));
    const double T = i % 2 ? 0.7 : 1.0;
    const auto analytic = grad_logprob(g.params, g.steps, g.tokens, T);
    std::vector<double> numeric(analytic.size());
    const double h = 1e-6;
    for (std::size_t k = 0; k < numeric.size(); ++k) {
      PolicyParams up = g.params, dn = g.params;
      up.theta[k] += h;
      dn.theta[k] -= h;
      numeric[k] = (ref_total(up, g, T) - ref_total(dn, g, T)) / (2 * h);
    }
    double num = 0, na = 0, nn = 0;
    for (std::size_t k = 0; k < numeric.size(); ++k) {
      num += (analytic[k] - numeric[k]) * (analytic[k] - numeric[k]);
      na += analytic[k] * analytic[k];
      nn += numeric[k] * numeric[k];
    }
    const double rel = std::sqrt(num) / std::max({std::sqrt(na), std::sqrt(nn), 1e-12});
    worst = std::max(worst, rel);
    // forward pass against the dense reference too
    const auto lp = sequence_logprobs(g.params, g.steps, g.tokens, T);
    for (std::size_t t = 0; t < lp.size(); ++t)
      REQUIRE(std::abs(lp[t] - fx::ref_logprob(g.params, g.steps[t], g.tokens[t], T)) < 1e-10);
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("gradient identities") {
  auto g = random_gradient_instance(12, 20, 8, 77);
  PolicyParams zero(12, 20);
  const std::vector<ContextFeatures> one_step{g.steps[0]};
  const std::vector<TokenId> one_tok{g.tokens[0]};
  const auto grad = grad_logprob(zero, one_step, one_tok);
  for (int f = 0; f < 20; ++f) {
    double col = 0;
    for (int v = 0; v < 12; ++v) col += grad[static_cast<std::size_t>(v * 20 + f)];
    CHECK(std::abs(col) < 1e-12);
  }
  const std::vector<ContextFeatures> twice{g.steps[0], g.steps[0]};
  const std::vector<TokenId> tok2{g.tokens[0], g.tokens[0]};
  const auto single = grad_logprob(g.params, one_step, one_tok);
  const auto doubled = grad_logprob(g.params, twice, tok2);
  for (std::size_t k = 0; k < single.size(); ++k) CHECK(doubled[k] == doctest::Approx(2 * single[k]).epsilon(1e-12));
}

TEST_CASE("greedy decoding breaks ties toward the lowest id") {
  fx::Toy t;
  const auto r = make_ict_task(t.ctx(), 1, false, 0);
  PolicyParams zero(static_cast<int>(t.vocab.size()), t.layout.dim());
  CHECK(greedy_sequence(zero, t.layout, t.vocab, r, 16).tokens == std::vector<TokenId>{kEos});
  // two words tied above everything else: the lower id wins
  const TokenId lo = t.vocab.word_begin() + 2, hi = t.vocab.word_begin() + 5;
  zero.at(lo, t.layout.bias) = 1.0;
  zero.at(hi, t.layout.bias) = 1.0;
  const auto s = greedy_sequence(zero, t.layout, t.vocab, r, 3);
  CHECK(s.tokens == std::vector<TokenId>{lo, lo, lo});
  CHECK_FALSE(s.terminated());
}

TEST_CASE("copy oracle names every demonstration once") {
  fx::Toy t;
  const auto oracle = make_copy_oracle_params(t.layout, t.vocab);
  for (int m = 1; m <= 3; ++m)
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto r = make_ict_task(t.ctx(), m, s % 2 == 0, s);
      const auto out = greedy_sequence(oracle, t.layout, t.vocab, r, 16);
      REQUIRE(out.terminated());
      REQUIRE(out.content_length() == static_cast<std::size_t>(m));
      REQUIRE(reward_ict(t.vocab, r, out, RewardConfig{}) == 1.0);
    }
}

TEST_CASE("initial biases land where configured") {
  fx::Toy t;
  PolicyConfig pc;
  pc.init_eos_bias = 3;
  pc.init_word_bias = 2;
  pc.init_coord_prior = 5;
  const FeatureLayout L(t.vocab, pc);
  const auto p = init_params(L, t.vocab, pc);
  CHECK(p.at(kEos, L.bias) == 3.0);
  CHECK(p.at(t.vocab.word_begin(), L.bias) == 2.0);
  CHECK(p.at(t.vocab.coord_token(4), L.target_coord + 4) == 5.0);
  CHECK(p.at(t.vocab.coord_token(4), L.target_coord + 3) == 0.0);
  CHECK(p.at(t.vocab.name_begin(), L.bias) == 0.0);
  pc.init_word_bias = std::nan("");
  CHECK_THROWS_AS(pc.validate(), ConfigError);
}
