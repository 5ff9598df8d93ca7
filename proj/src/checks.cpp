#include "vrcap/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "vrcap/rewards.hpp"

namespace vrcap {

bool CheckReport::all_passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed; });
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  os.precision(3);
  for (const auto& i : items)
    os << (i.passed ? "PASS " : "FAIL ") << i.name << ": " << i.detail << '\n';
  os << std::scientific << "max gradient relative error: " << max_gradient_rel_error << '\n';
  os << (all_passed() ? "all checks passed" : "checks FAILED") << '\n';
  return os.str();
}

double relative_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ContractError("relative_error: size mismatch");
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
}

GradientInstance random_gradient_instance(int V, int F, int max_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_int_distribution<int> feat(0, F - 1), tok(0, V - 1), len(1, max_len);
  GradientInstance g;
  g.params = PolicyParams(V, F);
  for (double& v : g.params.theta) v = 0.5 * n01(rng);
  const int T = len(rng);
  for (int t = 0; t < T; ++t) {
    ContextFeatures phi;
    for (int k = 0; k < 4; ++k) phi.entries.push_back({feat(rng), n01(rng)});
    g.steps.push_back(std::move(phi));
    g.tokens.push_back(tok(rng));
  }
  return g;
}

std::vector<double> finite_difference(const std::function<double(const PolicyParams&)>& f,
                                      PolicyParams params, double h) {
  std::vector<double> out(params.theta.size());
  for (std::size_t j = 0; j < params.theta.size(); ++j) {
    const double x = params.theta[j];
    params.theta[j] = x + h;
    const double up = f(params);
    params.theta[j] = x - h;
    const double down = f(params);
    params.theta[j] = x;
    out[j] = (up - down) / (2.0 * h);
  }
  return out;
}

namespace {

CheckItem check_logprob_gradient(const CheckOptions& o, double& worst) {
  double max_err = 0.0;
  for (int i = 0; i < o.gradient_instances; ++i) {
    auto g = random_gradient_instance(12, 20, 8, derive_seed(o.seed, {0x6c70ULL, static_cast<std::uint64_t>(i)}));
    const double temp = i % 2 == 0 ? 1.0 : 0.7;
    auto analytic = grad_logprob(g.params, g.steps, g.tokens, temp);
    if (o.gradient_fault) o.gradient_fault(analytic);
    const auto numeric = finite_difference(
        [&](const PolicyParams& p) {
          const auto lp = sequence_logprobs(p, g.steps, g.tokens, temp);
          return std::accumulate(lp.begin(), lp.end(), 0.0);
        },
        g.params);
    max_err = std::max(max_err, relative_error(analytic, numeric));
  }
  worst = std::max(worst, max_err);
  std::ostringstream os;
  os << o.gradient_instances << " instances, max relative error " << std::scientific << max_err;
  return {"logprob gradient vs finite differences", max_err < o.gradient_tolerance, max_err, os.str()};
}

// Groups whose ratios sit well away from the clip boundaries, so the loss is
// smooth at the evaluation point.
std::vector<Group> random_groups(const PolicyParams& params, std::mt19937_64& rng, double eps) {
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_int_distribution<int> n_groups(1, 2);
  const int V = params.vocab_size, F = params.feature_dim;
  std::vector<Group> groups(static_cast<std::size_t>(n_groups(rng)));
  PolicyParams old = params, ref = params;
  for (double& v : old.theta) v += 0.05 * n01(rng);
  for (double& v : ref.theta) v += 0.3 * n01(rng);
  for (auto& g : groups) {
    std::vector<double> rewards;
    for (int i = 0; i < 4; ++i) {
      for (;;) {
        auto inst = random_gradient_instance(V, F, 8, rng());
        Rollout r;
        r.steps = inst.steps;
        r.sequence.tokens = inst.tokens;
        r.logprobs_old = sequence_logprobs(old, r.steps, inst.tokens);
        r.logprobs_ref = sequence_logprobs(ref, r.steps, inst.tokens);
        const auto cur = sequence_logprobs(params, r.steps, inst.tokens);
        bool smooth = true;
        for (std::size_t t = 0; t < cur.size(); ++t) {
          const double ratio = std::exp(cur[t] - r.logprobs_old[t]);
          smooth = smooth && std::abs(ratio - (1.0 - eps)) > 1e-3 && std::abs(ratio - (1.0 + eps)) > 1e-3;
        }
        if (!smooth) continue;
        g.rollouts.push_back(std::move(r));
        break;
      }
      rewards.push_back(n01(rng));
    }
    g.advantages = compute_advantages(rewards, 1e-8);
  }
  return groups;
}

CheckItem check_grpo_gradient(const CheckOptions& o, double& worst) {
  double max_err = 0.0;
  GrpoConfig cfg;
  for (int i = 0; i < o.gradient_instances; ++i) {
    std::mt19937_64 rng(derive_seed(o.seed, {0x67726164ULL, static_cast<std::uint64_t>(i)}));
    auto base = random_gradient_instance(12, 20, 1, rng());
    // Alternate between loose and tight clipping so both branches are exercised.
    cfg.epsilon = i % 2 == 0 ? 0.2 : 0.02;
    const auto groups = random_groups(base.params, rng, cfg.epsilon);
    auto analytic = grpo_loss_and_grad(base.params, groups, cfg).grad;
    if (o.gradient_fault) o.gradient_fault(analytic);
    const auto numeric = finite_difference(
        [&](const PolicyParams& p) { return grpo_loss(p, groups, cfg); }, base.params);
    max_err = std::max(max_err, relative_error(analytic, numeric));
  }
  worst = std::max(worst, max_err);
  std::ostringstream os;
  os << o.gradient_instances << " instances, max relative error " << std::scientific << max_err;
  return {"GRPO loss gradient vs finite differences", max_err < o.gradient_tolerance, max_err, os.str()};
}

CheckItem check_on_policy_identity(const CheckOptions& o) {
  double max_loss = 0.0, max_diff = 0.0;
  GrpoConfig cfg;
  for (int i = 0; i < 20; ++i) {
    std::mt19937_64 rng(derive_seed(o.seed, {0x6f6eULL, static_cast<std::uint64_t>(i)}));
    std::normal_distribution<double> n01(0.0, 1.0);
    auto base = random_gradient_instance(12, 20, 1, rng());
    Group g;
    std::vector<double> rewards;
    for (int k = 0; k < 8; ++k) {
      auto inst = random_gradient_instance(12, 20, 8, rng());
      Rollout r;
      r.steps = inst.steps;
      r.sequence.tokens = inst.tokens;
      r.logprobs_old = sequence_logprobs(base.params, r.steps, inst.tokens);
      r.logprobs_ref = r.logprobs_old;
      g.rollouts.push_back(std::move(r));
      rewards.push_back(n01(rng));
    }
    g.advantages = compute_advantages(rewards, 1e-8);
    const auto res = grpo_loss_and_grad(base.params, std::span(&g, 1), cfg);
    // Vanilla estimator: -(1/G) sum_i A_i mean_t grad log pi.
    std::vector<double> pg(base.params.theta.size(), 0.0);
    for (std::size_t k = 0; k < g.rollouts.size(); ++k) {
      const auto& r = g.rollouts[k];
      const double T = static_cast<double>(r.sequence.tokens.size());
      for (std::size_t t = 0; t < r.steps.size(); ++t)
        accumulate_logprob_grad(base.params, r.steps[t], r.sequence.tokens[t],
                                -g.advantages[k] / (8.0 * T), 1.0, pg);
    }
    max_loss = std::max(max_loss, std::abs(res.loss));
    for (std::size_t j = 0; j < pg.size(); ++j) max_diff = std::max(max_diff, std::abs(pg[j] - res.grad[j]));
  }
  std::ostringstream os;
  os << "max |loss| " << std::scientific << max_loss << ", max gradient gap " << max_diff;
  return {"on-policy identity", max_loss < 1e-9 && max_diff < 1e-9, std::max(max_loss, max_diff), os.str()};
}

CheckItem check_advantages(const CheckOptions& o) {
  std::mt19937_64 rng(derive_seed(o.seed, {0x616476ULL}));
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::bernoulli_distribution coin(0.5);
  double worst_mean = 0.0, worst_var = 0.0;
  for (int i = 0; i < o.advantage_groups; ++i) {
    std::vector<double> r(8);
    for (auto& x : r) x = i % 3 == 0 ? (coin(rng) ? 1.0 : 0.0) : u(rng);
    const auto a = compute_advantages(r, 1e-8);
    const MeanStd rs = mean_std(r);
    const MeanStd as = mean_std(a);
    worst_mean = std::max(worst_mean, std::abs(as.mean));
    if (rs.stddev > 1e-6) worst_var = std::max(worst_var, std::abs(as.stddev * as.stddev - 1.0));
  }
  const auto zeros = compute_advantages(std::vector<double>(8, 1.0), 1e-8);
  const bool const_ok = std::all_of(zeros.begin(), zeros.end(), [](double v) { return v == 0.0; });
  std::ostringstream os;
  os << o.advantage_groups << " groups, max |mean| " << std::scientific << worst_mean
     << ", max |var-1| " << worst_var << (const_ok ? ", constant group -> zeros" : ", constant group NONZERO");
  return {"advantage normalization", worst_mean < 1e-9 && worst_var < 0.01 && const_ok, worst_mean, os.str()};
}

CheckItem check_kl() {
  const double lp = -1.3;
  const std::vector<double> cur{lp}, ref{lp + std::log(2.0)};
  const double v = kl_estimate(cur, ref)[0];
  const double same = kl_estimate(cur, cur)[0];
  std::ostringstream os;
  os.precision(9);
  os << "kl(u=2) = " << v << ", kl(u=1) = " << same;
  return {"KL estimator", std::abs(v - 0.306853) < 1e-6 && same == 0.0, v, os.str()};
}

// IoU computed from scratch for the box oracle.
double oracle_iou(const BBox& a, const BBox& b) {
  const int ix = std::max(0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
  const int iy = std::max(0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
  const double inter = static_cast<double>(ix) * iy;
  const double uni = static_cast<double>(a.area() + b.area()) - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

CheckItem check_rewards(const Vocabulary& vocab, const CheckOptions& o) {
  RewardConfig rc;
  int failures = 0;
  std::mt19937_64 rng(derive_seed(o.seed, {0x726577ULL}));
  const int cap = vocab.coord_cap();
  std::uniform_int_distribution<int> coord(0, cap);

  TaskRecord vlt;
  vlt.kind = TaskKind::VLT;
  for (int i = 0; i < o.reward_cases; ++i) {
    int a = coord(rng), b = coord(rng), c = coord(rng), d = coord(rng);
    BBox gold{std::min(a, b), std::min(c, d), std::max(a, b), std::max(c, d)};
    a = coord(rng), b = coord(rng), c = coord(rng), d = coord(rng);
    BBox pred{std::min(a, b), std::min(c, d), std::max(a, b), std::max(c, d)};
    vlt.gold.value = gold;
    TokenSequence out{{vocab.lbracket(), vocab.coord_token(pred.x1), vocab.comma(), vocab.coord_token(pred.y1),
                       vocab.comma(), vocab.coord_token(pred.x2), vocab.comma(), vocab.coord_token(pred.y2),
                       vocab.rbracket(), kEos}};
    const int expect = oracle_iou(gold, pred) >= 0.5 ? 1 : 0;
    failures += reward_vlt(vocab, vlt, out, rc) != expect;
  }
  // IoU exactly 0.5 passes.
  vlt.gold.value = BBox{0, 0, 2, 2};
  TokenSequence half{{vocab.coord_token(0), vocab.coord_token(0), vocab.coord_token(2), vocab.coord_token(1), kEos}};
  failures += reward_vlt(vocab, vlt, half, rc) != 1;

  // n of m names gives exactly n/m.
  TaskRecord ict;
  ict.kind = TaskKind::ICTM;
  const std::size_t names = vocab.name_count();
  for (int m = 1; m <= 3 && static_cast<std::size_t>(m) <= names; ++m) {
    ict.kind = m == 1 ? TaskKind::ICT1 : TaskKind::ICTM;
    std::vector<std::string> gold;
    for (int k = 0; k < m; ++k) gold.push_back(vocab.surface(vocab.name_begin() + k));
    ict.gold.value = gold;
    for (int n = 0; n <= m; ++n) {
      TokenSequence out;
      for (int k = 0; k < n; ++k) out.tokens.push_back(vocab.name_begin() + k);
      out.tokens.push_back(kEos);
      failures += reward_ict(vocab, ict, out, rc) != static_cast<double>(n) / m;
    }
  }

  TaskRecord oct;
  oct.kind = TaskKind::OCT;
  for (BinaryAnswer g : {BinaryAnswer::yes, BinaryAnswer::no}) {
    oct.gold.value = g;
    for (TokenId said : {vocab.yes(), vocab.no()}) {
      const int expect = (said == vocab.yes()) == (g == BinaryAnswer::yes) ? 1 : 0;
      failures += reward_oct(vocab, oct, TokenSequence{{said, kEos}}) != expect;
    }
    failures += reward_oct(vocab, oct, TokenSequence{{kEos}}) != 0;
  }
  std::ostringstream os;
  os << o.reward_cases << " random boxes, IoU=0.5 boundary, n/m table, yes/no table: " << failures << " mismatches";
  return {"reward oracles", failures == 0, static_cast<double>(failures), os.str()};
}

}  // namespace

CheckReport run_checks(const Vocabulary& vocab, const CheckOptions& options) {
  CheckReport rep;
  rep.items.push_back(check_logprob_gradient(options, rep.max_gradient_rel_error));
  rep.items.push_back(check_grpo_gradient(options, rep.max_gradient_rel_error));
  rep.items.push_back(check_on_policy_identity(options));
  rep.items.push_back(check_advantages(options));
  rep.items.push_back(check_kl());
  rep.items.push_back(check_rewards(vocab, options));
  return rep;
}

}  // namespace vrcap
