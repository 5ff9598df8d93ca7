#include <doctest.h>

#include <atomic>
#include <cmath>
#include <random>
#include <set>

#include "fixture.hpp"
#include "vrcap/checks.hpp"

using namespace vrcap;

namespace {

// Loss written out from the objective with the dense forward pass.
double ref_loss(const PolicyParams& p, const std::vector<Group>& groups, const GrpoConfig& cfg) {
  double total = 0;
  for (const auto& g : groups) {
    double gl = 0;
    for (std::size_t i = 0; i < g.rollouts.size(); ++i) {
      const auto& r = g.rollouts[i];
      double tok_sum = 0;
      for (std::size_t t = 0; t < r.sequence.tokens.size(); ++t) {
        const double lp = fx::ref_logprob(p, r.steps[t], r.sequence.tokens[t], cfg.temperature);
        const double ratio = std::exp(lp - r.logprobs_old[t]);
        const double a = g.advantages[i];
        const double surr = std::min(ratio * a, std::clamp(ratio, 1 - cfg.epsilon, 1 + cfg.epsilon) * a);
        const double u = std::exp(r.logprobs_ref[t] - lp);
        tok_sum += surr - cfg.beta_kl * (u - std::log(u) - 1);
      }
      gl += tok_sum / static_cast<double>(r.sequence.tokens.size());
    }
    total += -gl / static_cast<double>(g.rollouts.size());
  }
  return total / static_cast<double>(groups.size());
}

struct Instance {
  PolicyParams params;
  std::vector<Group> groups;
};

// Random groups over a V=12, F=20 policy. `shift` moves the sampling policy
// away from params so ratios differ from 1.
Instance random_instance(std::uint64_t seed, double shift, const GrpoConfig& cfg, bool equal_lengths = false) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0, 1);
  Instance in;
  in.params = random_gradient_instance(12, 20, 8, seed).params;
  PolicyParams old = in.params, ref = in.params;
  for (double& x : old.theta) x += shift * n01(rng);
  for (double& x : ref.theta) x += 0.3 * n01(rng);
  for (int b = 0; b < 2; ++b) {
    Group g;
    for (int i = 0; i < 4; ++i) {
      auto gi = random_gradient_instance(12, 20, equal_lengths ? 5 : 8, derive_seed(seed, {static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(i)}));
      if (equal_lengths) {
        while (gi.tokens.size() < 5) {
          gi.tokens.push_back(gi.tokens.back());
          gi.steps.push_back(gi.steps.back());
        }
      }
      Rollout r;
      r.sequence.tokens = gi.tokens;
      r.steps = gi.steps;
      r.logprobs_old = sequence_logprobs(old, r.steps, r.sequence.tokens, cfg.temperature);
      r.logprobs_ref = sequence_logprobs(ref, r.steps, r.sequence.tokens, cfg.temperature);
      r.reward.total = static_cast<double>(rng() % 3) / 2.0;
      g.rollouts.push_back(std::move(r));
    }
    g.rollouts[0].reward.total = 0.0;
    g.rollouts[1].reward.total = 1.0;
    fill_advantages(g, cfg.adv_eps);
    in.groups.push_back(std::move(g));
  }
  return in;
}

bool near_kink(const Instance& in, const GrpoConfig& cfg) {
  for (const auto& g : in.groups)
    for (const auto& r : g.rollouts) {
      const auto lp = sequence_logprobs(in.params, r.steps, r.sequence.tokens, cfg.temperature);
      for (std::size_t t = 0; t < lp.size(); ++t) {
        const double ratio = std::exp(lp[t] - r.logprobs_old[t]);
        if (std::abs(ratio - 1 - cfg.epsilon) < 1e-3 || std::abs(ratio - 1 + cfg.epsilon) < 1e-3) return true;
      }
    }
  return false;
}

double rel_err(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0, na = 0, nb = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    d += (a[k] - b[k]) * (a[k] - b[k]);
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  return std::sqrt(d) / std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
}

Group single_token_group(const PolicyParams& p, const ContextFeatures& phi, TokenId tok, double ratio,
                         double adv) {
  Group g;
  Rollout r;
  r.sequence.tokens = {tok};
  r.steps = {phi};
  const double lp = sequence_logprobs(p, r.steps, r.sequence.tokens)[0];
  r.logprobs_old = {lp - std::log(ratio)};
  r.logprobs_ref = {lp};
  g.rollouts.push_back(r);
  g.advantages = {adv};
  return g;
}

}  // namespace

TEST_CASE("advantage examples") {
  const std::vector<double> r{1, 1, 0, 0, 1, 1, 0, 0};
  const auto a = compute_advantages(r, 1e-8);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(a[i] == doctest::Approx(r[i] ? 1.0 : -1.0).epsilon(1e-7));
  for (double x : compute_advantages(std::vector<double>(8, 1.0), 1e-8)) CHECK(x == 0.0);
}

TEST_CASE("advantages are centred and scaled") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> u(0, 2);
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> r(8);
    const int k = kind(rng);
    for (auto& x : r) x = k == 0 ? 0.5 : k == 1 ? static_cast<double>(rng() % 2) : k == 2 ? std::round(u(rng) * 3) / 3 : u(rng);
    const auto a = compute_advantages(r, 1e-8);
    const auto ms = mean_std(a);
    REQUIRE(std::abs(ms.mean) < 1e-9);
    if (mean_std(r).stddev > 1e-6) REQUIRE(std::abs(ms.stddev * ms.stddev - 1) < 0.01);
    else for (double x : a) REQUIRE(x == 0.0);
  }
}

TEST_CASE("kl estimator") {
  const std::vector<double> a{-1.0, -2.5, -0.1};
  for (double k : kl_estimate(a, a)) CHECK(k == 0.0);
  const auto at2 = kl_estimate(std::vector<double>{-2.0}, std::vector<double>{-2.0 + std::log(2.0)});
  CHECK(std::abs(at2[0] - 0.306853) < 1e-6);
  CHECK(std::abs(at2[0] - (1 - std::log(2.0))) < 1e-15);
  CHECK_THROWS_AS(kl_estimate(a, std::vector<double>{0.0}), ContractError);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lp(-30, 0);
  std::vector<double> x(100000), y(100000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = lp(rng);
    y[i] = i % 10 == 0 ? x[i] + 1e-9 * lp(rng) : lp(rng);
  }
  for (double k : kl_estimate(x, y)) REQUIRE(k >= 0.0);
}

TEST_CASE("rollout groups") {
  fx::Toy t;
  const auto params = init_params(t.layout, t.vocab, t.pc);
  const PolicyEnv env{t.vocab, t.layout, RewardConfig{}, 16};
  GrpoConfig cfg;
  const auto task = make_oct_task(t.ctx(), true, 4);
  const auto g = rollout_group(params, nullptr, env, task, cfg, 9);
  CHECK(g.rollouts.size() == 8);
  CHECK(g.advantages.empty());
  const auto g2 = rollout_group(params, nullptr, env, task, cfg, 9);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(g.rollouts[i].sequence == g2.rollouts[i].sequence);
    CHECK(g.rollouts[i].logprobs_ref == g.rollouts[i].logprobs_old);
    CHECK(g.rollouts[i].reward.total == score(t.vocab, task, g.rollouts[i].sequence, env.rewards).total);
  }

  // a random policy gives mixed OCT rewards in some group
  PolicyParams uniform(static_cast<int>(t.vocab.size()), t.layout.dim());
  uniform.at(t.vocab.yes(), t.layout.bias) = 3;
  uniform.at(t.vocab.no(), t.layout.bias) = 3;
  int varied = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto gs = rollout_group(uniform, nullptr, env, task, cfg, s);
    std::set<double> rs;
    for (const auto& r : gs.rollouts) rs.insert(r.reward.total);
    varied += rs.size() > 1;
  }
  CHECK(varied > 0);

  PolicyParams other = params;
  other.at(kEos, 0) -= 1.0;
  const auto g3 = rollout_group(params, &other, env, task, cfg, 9);
  CHECK(g3.rollouts[0].logprobs_ref != g3.rollouts[0].logprobs_old);
}

TEST_CASE("loss matches the written-out objective and its finite differences") {
  double worst = 0;
  int checked = 0;
  for (std::uint64_t s = 0; checked < 100; ++s) {
    GrpoConfig cfg;
    cfg.epsilon = s % 2 ? 0.2 : 0.05;
    cfg.temperature = s % 3 == 0 ? 0.8 : 1.0;
    auto in = random_instance(s, 0.2, cfg);
    if (near_kink(in, cfg)) continue;
    ++checked;
    const auto res = grpo_loss_and_grad(in.params, in.groups, cfg);
    REQUIRE(std::abs(res.loss - ref_loss(in.params, in.groups, cfg)) < 1e-10);
    REQUIRE(std::abs(grpo_loss(in.params, in.groups, cfg) - res.loss) < 1e-12);
    std::vector<double> fd(res.grad.size());
    const double h = 1e-6;
    for (std::size_t k = 0; k < fd.size(); ++k) {
      PolicyParams up = in.params, dn = in.params;
      up.theta[k] += h;
      dn.theta[k] -= h;
      fd[k] = (ref_loss(up, in.groups, cfg) - ref_loss(dn, in.groups, cfg)) / (2 * h);
    }
    worst = std::max(worst, rel_err(res.grad, fd));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("on-policy loss is zero and its gradient is the policy gradient") {
  GrpoConfig cfg;
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto in = random_instance(s, 0.0, cfg);
    for (auto& g : in.groups)
      for (auto& r : g.rollouts) r.logprobs_ref = r.logprobs_old;
    const auto res = grpo_loss_and_grad(in.params, in.groups, cfg);
    CHECK(std::abs(res.loss) < 1e-9);
    CHECK(res.mean_kl == 0.0);
    CHECK(res.clip_fraction == 0.0);
    std::vector<double> pg(res.grad.size(), 0.0);
    const double B = static_cast<double>(in.groups.size());
    for (const auto& g : in.groups)
      for (std::size_t i = 0; i < g.rollouts.size(); ++i) {
        const auto& r = g.rollouts[i];
        const auto gl = grad_logprob(in.params, r.steps, r.sequence.tokens);
        const double w = g.advantages[i] / (B * static_cast<double>(g.rollouts.size()) *
                                            static_cast<double>(r.sequence.tokens.size()));
        for (std::size_t k = 0; k < pg.size(); ++k) pg[k] -= w * gl[k];
      }
    double md = 0;
    for (std::size_t k = 0; k < pg.size(); ++k) md = std::max(md, std::abs(pg[k] - res.grad[k]));
    CHECK(md < 1e-9);
  }
}

TEST_CASE("clipping") {
  auto gi = random_gradient_instance(12, 20, 3, 5);
  GrpoConfig cfg;
  cfg.beta_kl = 0.0;
  // ratio 1.5 with positive advantage: clipped branch binds, no gradient
  const Group pos = single_token_group(gi.params, gi.steps[0], gi.tokens[0], 1.5, 1.0);
  const auto r1 = grpo_loss_and_grad(gi.params, std::vector<Group>{pos}, cfg);
  for (double x : r1.grad) CHECK(x == 0.0);
  CHECK(r1.clip_fraction == 1.0);
  CHECK(r1.loss == doctest::Approx(-1.2));
  // negative advantage at the same ratio keeps the unclipped term
  const Group neg = single_token_group(gi.params, gi.steps[0], gi.tokens[0], 1.5, -1.0);
  const auto r2 = grpo_loss_and_grad(gi.params, std::vector<Group>{neg}, cfg);
  double norm = 0;
  for (double x : r2.grad) norm += x * x;
  CHECK(norm > 0.0);
  CHECK(r2.clip_fraction == 0.0);
  CHECK(r2.loss == doctest::Approx(1.5));
  // low side
  const Group low = single_token_group(gi.params, gi.steps[0], gi.tokens[0], 0.5, -1.0);
  const auto r3 = grpo_loss_and_grad(gi.params, std::vector<Group>{low}, cfg);
  CHECK(r3.clip_fraction == 1.0);
  CHECK(r3.loss == doctest::Approx(0.8));
}

TEST_CASE("kl weight enters linearly") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    GrpoConfig with;
    auto in = random_instance(s, 0.1, with, true);
    in.groups.resize(1);
    GrpoConfig without = with;
    without.beta_kl = 0.0;
    const auto a = grpo_loss_and_grad(in.params, in.groups, with);
    const auto b = grpo_loss_and_grad(in.params, in.groups, without);
    CHECK(a.mean_kl > 0.0);
    CHECK(std::abs((a.loss - b.loss) - 0.04 * a.mean_kl) < 1e-9);
  }
}

TEST_CASE("constant rewards move parameters only through the kl term") {
  GrpoConfig cfg;
  auto in = random_instance(3, 0.1, cfg);
  in.groups.resize(1);
  for (auto& r : in.groups[0].rollouts) r.reward.total = 1.0;
  fill_advantages(in.groups[0], cfg.adv_eps);
  for (double a : in.groups[0].advantages) REQUIRE(a == 0.0);
  const auto res = grpo_loss_and_grad(in.params, in.groups, cfg);
  // same gradient as the pure kl objective
  GrpoConfig kl_only = cfg;
  std::vector<double> fd(res.grad.size());
  for (std::size_t k = 0; k < fd.size(); ++k) {
    PolicyParams up = in.params, dn = in.params;
    up.theta[k] += 1e-6;
    dn.theta[k] -= 1e-6;
    fd[k] = (ref_loss(up, in.groups, kl_only) - ref_loss(dn, in.groups, kl_only)) / 2e-6;
  }
  CHECK(rel_err(res.grad, fd) < 1e-5);
  // and nothing at all once the reference is the current policy
  for (auto& r : in.groups[0].rollouts) r.logprobs_ref = sequence_logprobs(in.params, r.steps, r.sequence.tokens);
  for (double x : grpo_loss_and_grad(in.params, in.groups, cfg).grad) CHECK(std::abs(x) < 1e-15);
}

TEST_CASE("non-finite values are reported") {
  GrpoConfig cfg;
  auto in = random_instance(1, 0.1, cfg);
  in.groups[0].rollouts[0].logprobs_old[0] = -std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(grpo_loss_and_grad(in.params, in.groups, cfg), NumericalError);
  in = random_instance(1, 0.1, cfg);
  in.groups[0].advantages.clear();
  CHECK_THROWS_AS(grpo_loss_and_grad(in.params, in.groups, cfg), ContractError);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  for (int w : {1, 3, 8}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), w, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) REQUIRE(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(50, w, [](std::size_t i) {
                      if (i == 17) throw ContractError("boom");
                    }),
                    ContractError);
  }
}

TEST_CASE("training loop") {
  fx::Toy t;
  DatasetConfig dc;
  dc.total_records = 60;
  const auto ds = build_dataset(t.world, t.vocab, dc);
  const PolicyEnv env{t.vocab, t.layout, RewardConfig{}, 16};
  const auto init = init_params(t.layout, t.vocab, t.pc);
  GrpoConfig cfg;
  cfg.steps = 0;
  auto r0 = train(ds.records, env, cfg, init);
  CHECK(r0.params == init);
  CHECK(r0.log.rows.empty());

  cfg.steps = 12;
  cfg.seed = 5;
  int calls = 0;
  const auto a = train(ds.records, env, cfg, init, [&](const TrainLogRow& row, const PolicyParams&) {
    CHECK(row.step == calls);
    ++calls;
  });
  CHECK(calls == 12);
  CHECK_FALSE(a.diverged);
  CHECK(a.params != init);
  GrpoConfig par = cfg;
  par.workers = 4;
  const auto b = train(ds.records, env, par, init);
  CHECK(a.params == b.params);
  REQUIRE(a.log.rows.size() == b.log.rows.size());
  for (std::size_t i = 0; i < a.log.rows.size(); ++i) {
    CHECK(a.log.rows[i].loss == b.log.rows[i].loss);
    CHECK(a.log.rows[i].mean_task_reward == b.log.rows[i].mean_task_reward);
    CHECK(a.log.rows[i].mean_length == b.log.rows[i].mean_length);
  }
  GrpoConfig frozen = cfg;
  frozen.freeze_kl_reference = true;
  CHECK(train(ds.records, env, frozen, init).params != a.params);

  // linear softmax saturates instead of overflowing, so poison a weight
  PolicyParams poisoned = init;
  poisoned.at(kEos, t.layout.bias) = std::numeric_limits<double>::infinity();
  const auto d = train(ds.records, env, cfg, poisoned);
  CHECK(d.diverged);
  CHECK(d.error.find("step 0") != std::string::npos);
  CHECK(d.log.rows.empty());

  CHECK_THROWS_AS(train(std::span<const TaskRecord>{}, env, cfg, init), ContractError);
  GrpoConfig bad = cfg;
  bad.group_size = 1;
  CHECK_THROWS_AS(train(ds.records, env, bad, init), ConfigError);
}
