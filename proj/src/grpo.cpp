#include "vrcap/grpo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace vrcap {

void GrpoConfig::validate() const {
  if (group_size < 2) throw ConfigError("grpo: group_size must be >= 2");
  if (!std::isfinite(epsilon) || !std::isfinite(beta_kl) || !std::isfinite(learning_rate) ||
      !std::isfinite(temperature) || !std::isfinite(adv_eps))
    throw ConfigError("grpo: settings must be finite");
  if (!(epsilon > 0.0)) throw ConfigError("grpo: epsilon must be > 0");
  if (!(beta_kl >= 0.0)) throw ConfigError("grpo: beta_kl must be >= 0");
  if (!(learning_rate > 0.0)) throw ConfigError("grpo: learning_rate must be > 0");
  if (steps < 0) throw ConfigError("grpo: steps must be >= 0");
  if (batch_tasks_per_step < 1) throw ConfigError("grpo: batch_tasks_per_step must be >= 1");
  if (!(temperature > 0.0)) throw ConfigError("grpo: temperature must be > 0");
  if (!(adv_eps >= 0.0)) throw ConfigError("grpo: adv_eps must be >= 0");
  if (snapshot_interval < 1) throw ConfigError("grpo: snapshot_interval must be >= 1");
  if (workers < 1) throw ConfigError("grpo: workers must be >= 1");
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lk(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(w - 1);
  for (std::size_t k = 1; k < w; ++k) pool.emplace_back(run);
  run();
  pool.clear();
  if (err) std::rethrow_exception(err);
}

std::vector<double> compute_advantages(std::span<const double> rewards, double adv_eps) {
  const MeanStd ms = mean_std(rewards);
  std::vector<double> adv;
  adv.reserve(rewards.size());
  for (double r : rewards) adv.push_back((r - ms.mean) / (ms.stddev + adv_eps));
  return adv;
}

std::vector<double> kl_estimate(std::span<const double> logp_current,
                                std::span<const double> logp_ref) {
  if (logp_current.size() != logp_ref.size())
    throw ContractError("kl_estimate: length mismatch");
  std::vector<double> out;
  out.reserve(logp_current.size());
  for (std::size_t t = 0; t < logp_current.size(); ++t) {
    const double d = logp_ref[t] - logp_current[t];
    // expm1(d) - d == e^d - d - 1 without cancellation near d = 0.
    out.push_back(std::expm1(d) - d);
  }
  return out;
}

Group rollout_group(const PolicyParams& snapshot, const PolicyParams* kl_reference,
                    const PolicyEnv& env, const TaskRecord& task, const GrpoConfig& cfg,
                    std::uint64_t seed) {
  Group g;
  g.task_id = task.record_id;
  g.kind = task.kind;
  g.rollouts.reserve(static_cast<std::size_t>(cfg.group_size));
  for (int i = 0; i < cfg.group_size; ++i) {
    Rollout r = sample_sequence(snapshot, env.layout, env.vocab, task, cfg.temperature,
                                env.max_len, derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    if (kl_reference)
      r.logprobs_ref = sequence_logprobs(*kl_reference, r.steps, r.sequence.tokens, cfg.temperature);
    r.reward = score(env.vocab, task, r.sequence, env.rewards);
    g.rollouts.push_back(std::move(r));
  }
  return g;
}

void fill_advantages(Group& group, double adv_eps) {
  std::vector<double> rewards;
  rewards.reserve(group.rollouts.size());
  for (const auto& r : group.rollouts) rewards.push_back(r.reward.total);
  group.advantages = compute_advantages(rewards, adv_eps);
}

namespace {

struct GroupTerms {
  double loss = 0.0;
  double kl_sum = 0.0;
  std::int64_t clipped = 0;
  std::int64_t tokens = 0;
};

// Loss of one group (and its gradient when `grad` is non-empty).
GroupTerms group_loss(const PolicyParams& params, const Group& g, const GrpoConfig& cfg,
                      std::span<double> grad) {
  if (g.advantages.size() != g.rollouts.size())
    throw ContractError("grpo_loss: advantages not filled");
  GroupTerms out;
  const double inv_g = 1.0 / static_cast<double>(g.rollouts.size());
  const double lo = 1.0 - cfg.epsilon;
  const double hi = 1.0 + cfg.epsilon;
  for (std::size_t i = 0; i < g.rollouts.size(); ++i) {
    const Rollout& r = g.rollouts[i];
    const double adv = g.advantages[i];
    const auto& toks = r.sequence.tokens;
    const auto logp = sequence_logprobs(params, r.steps, toks, cfg.temperature);
    const auto kl = kl_estimate(logp, r.logprobs_ref);
    const double inv_t = 1.0 / static_cast<double>(toks.size());
    for (std::size_t t = 0; t < toks.size(); ++t) {
      const double ratio = std::exp(logp[t] - r.logprobs_old[t]);
      const double unclipped = ratio * adv;
      const double clipped = std::clamp(ratio, lo, hi) * adv;
      // The clipped branch is the binding one only when it is strictly smaller.
      const bool clip_active = clipped < unclipped;
      const double surrogate = clip_active ? clipped : unclipped;
      out.loss -= inv_g * inv_t * (surrogate - cfg.beta_kl * kl[t]);
      out.kl_sum += kl[t];
      out.clipped += clip_active ? 1 : 0;
      ++out.tokens;
      if (!grad.empty()) {
        const double u = std::exp(r.logprobs_ref[t] - logp[t]);
        // d/dlogp of [surrogate - beta*kl]: ratio*adv (unclipped) and -beta*(1-u).
        const double d_obj = (clip_active ? 0.0 : unclipped) - cfg.beta_kl * (1.0 - u);
        accumulate_logprob_grad(params, r.steps[t], toks[t], -inv_g * inv_t * d_obj,
                                cfg.temperature, grad);
      }
      if (!std::isfinite(out.loss) || !std::isfinite(ratio) || !std::isfinite(kl[t])) {
        std::ostringstream os;
        os << "grpo_loss: non-finite value (task " << g.task_id << ", rollout " << i
           << ", token " << t << ", logp " << logp[t] << ", logp_old " << r.logprobs_old[t]
           << ", ratio " << ratio << ", kl " << kl[t] << ")";
        throw NumericalError(os.str());
      }
    }
  }
  return out;
}

}  // namespace

LossResult grpo_loss_and_grad(const PolicyParams& params, std::span<const Group> groups,
                              const GrpoConfig& cfg, int workers) {
  if (groups.empty()) throw ContractError("grpo_loss_and_grad: no groups");
  const std::size_t n = params.theta.size();
  std::vector<std::vector<double>> grads(groups.size(), std::vector<double>(n, 0.0));
  std::vector<GroupTerms> terms(groups.size());
  parallel_for(groups.size(), workers, [&](std::size_t k) {
    terms[k] = group_loss(params, groups[k], cfg, grads[k]);
  });

  LossResult res;
  res.grad.assign(n, 0.0);
  const double inv_b = 1.0 / static_cast<double>(groups.size());
  double kl_sum = 0.0;
  std::int64_t clipped = 0;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    res.loss += inv_b * terms[k].loss;
    for (std::size_t j = 0; j < n; ++j) res.grad[j] += inv_b * grads[k][j];
    kl_sum += terms[k].kl_sum;
    clipped += terms[k].clipped;
    res.tokens += terms[k].tokens;
  }
  if (res.tokens > 0) {
    res.mean_kl = kl_sum / static_cast<double>(res.tokens);
    res.clip_fraction = static_cast<double>(clipped) / static_cast<double>(res.tokens);
  }
  for (double v : res.grad)
    if (!std::isfinite(v)) throw NumericalError("grpo_loss_and_grad: non-finite gradient");
  return res;
}

double grpo_loss(const PolicyParams& params, std::span<const Group> groups,
                 const GrpoConfig& cfg) {
  double loss = 0.0;
  for (const auto& g : groups) loss += group_loss(params, g, cfg, {}).loss;
  return loss / static_cast<double>(groups.size());
}

TrainResult train(std::span<const TaskRecord> dataset, const PolicyEnv& env,
                  const GrpoConfig& cfg, PolicyParams init, const StepCallback& on_step) {
  cfg.validate();
  if (dataset.empty()) throw ContractError("train: empty dataset");

  TrainResult res;
  res.params = std::move(init);
  const PolicyParams initial = res.params;
  PolicyParams snapshot = res.params;

  std::vector<std::size_t> order(dataset.size());
  std::size_t cursor = order.size();
  std::uint64_t epoch = 0;
  const auto B = static_cast<std::size_t>(cfg.batch_tasks_per_step);

  for (int step = 0; step < cfg.steps; ++step) {
    if (step % cfg.snapshot_interval == 0) snapshot = res.params;

    std::vector<std::size_t> batch;
    while (batch.size() < B) {
      if (cursor == order.size()) {
        std::iota(order.begin(), order.end(), 0);
        std::mt19937_64 rng(derive_seed(cfg.seed, {0x65706f6368ULL, epoch++}));
        std::shuffle(order.begin(), order.end(), rng);
        cursor = 0;
      }
      batch.push_back(order[cursor++]);
    }

    std::vector<Group> groups(batch.size());
    const PolicyParams* kl_ref = cfg.freeze_kl_reference ? &initial : nullptr;
    parallel_for(batch.size(), cfg.workers, [&](std::size_t b) {
      groups[b] = rollout_group(snapshot, kl_ref, env, dataset[batch[b]], cfg,
                                derive_seed(cfg.seed, {0x726f6c6cULL, static_cast<std::uint64_t>(step), b}));
      fill_advantages(groups[b], cfg.adv_eps);
    });

    LossResult lr;
    try {
      lr = grpo_loss_and_grad(res.params, groups, cfg, cfg.workers);
    } catch (const NumericalError& e) {
      res.diverged = true;
      res.error = "step " + std::to_string(step) + ": " + e.what();
      return res;
    }

    PolicyParams next = res.params;
    for (std::size_t j = 0; j < next.theta.size(); ++j)
      next.theta[j] -= cfg.learning_rate * lr.grad[j];
    if (!next.all_finite()) {
      res.diverged = true;
      res.error = "step " + std::to_string(step) + ": parameters became non-finite";
      return res;
    }
    res.params = std::move(next);

    TrainLogRow row;
    row.step = step;
    row.loss = lr.loss;
    row.mean_kl = lr.mean_kl;
    row.clip_fraction = lr.clip_fraction;
    std::map<TaskKind, std::pair<double, int>> per_kind;
    double ict_sum = 0.0, total_sum = 0.0, len_sum = 0.0;
    int ict_n = 0, n = 0;
    for (const auto& g : groups) {
      for (const auto& r : g.rollouts) {
        auto& pk = per_kind[g.kind];
        pk.first += r.reward.task_reward;
        ++pk.second;
        if (is_ict_kind(g.kind)) {
          ict_sum += r.reward.task_reward;
          ++ict_n;
        }
        total_sum += r.reward.total;
        len_sum += static_cast<double>(r.sequence.content_length());
        ++n;
      }
    }
    for (const auto& [k, v] : per_kind) row.mean_task_reward[k] = v.first / v.second;
    if (ict_n > 0) row.mean_ict_reward = ict_sum / ict_n;
    row.mean_total_reward = total_sum / n;
    row.mean_length = len_sum / n;
    res.log.rows.push_back(row);
    if (on_step) on_step(row, res.params);
  }
  return res;
}

}  // namespace vrcap
