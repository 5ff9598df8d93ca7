#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vrcap/policy.hpp"
#include "vrcap/rewards.hpp"
#include "vrcap/taskgen.hpp"

namespace vrcap {

/// Non-finite value inside the loss or gradient.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GrpoConfig {
  int group_size = 8;
  double epsilon = 0.2;
  double beta_kl = 0.04;
  double learning_rate = 0.5;
  int steps = 3000;
  int batch_tasks_per_step = 4;
  double temperature = 1.0;
  double adv_eps = 1e-8;
  // Steps between refreshes of the sampling/reference snapshot.
  int snapshot_interval = 1;
  // Keep the KL reference at the initial policy instead of the snapshot.
  bool freeze_kl_reference = false;
  int workers = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// What rollouts and scoring need besides the parameters.
struct PolicyEnv {
  const Vocabulary& vocab;
  const FeatureLayout& layout;
  RewardConfig rewards;
  int max_len = 16;
};

struct Group {
  std::int64_t task_id = 0;
  TaskKind kind = TaskKind::OCT;
  std::vector<Rollout> rollouts;
  std::vector<double> advantages;
};

/// (R_i - mean) / (population std + adv_eps).
std::vector<double> compute_advantages(std::span<const double> rewards, double adv_eps);

/// Per-token u - log u - 1 with u = exp(logp_ref - logp_current).
std::vector<double> kl_estimate(std::span<const double> logp_current,
                                std::span<const double> logp_ref);

/// G rollouts from the frozen snapshot, scored; advantages left empty.
/// `kl_reference`, when given, fills Rollout::logprobs_ref.
Group rollout_group(const PolicyParams& snapshot, const PolicyParams* kl_reference,
                    const PolicyEnv& env, const TaskRecord& task, const GrpoConfig& cfg,
                    std::uint64_t seed);

/// Rewards -> advantages for every group.
void fill_advantages(Group& group, double adv_eps);

struct LossResult {
  double loss = 0.0;
  std::vector<double> grad;
  double mean_kl = 0.0;
  double clip_fraction = 0.0;
  std::int64_t tokens = 0;
};

/// Clipped surrogate with KL penalty, averaged over tokens, rollouts and
/// groups; returns the loss to minimize and its analytic gradient. Throws
/// NumericalError on non-finite intermediates.
LossResult grpo_loss_and_grad(const PolicyParams& params, std::span<const Group> groups,
                              const GrpoConfig& cfg, int workers = 1);
double grpo_loss(const PolicyParams& params, std::span<const Group> groups,
                 const GrpoConfig& cfg);

struct TrainLogRow {
  int step = 0;
  std::map<TaskKind, double> mean_task_reward;  // kinds present in the batch
  std::optional<double> mean_ict_reward;        // ICT1 + ICTM + DETAIL
  double mean_total_reward = 0.0;
  double loss = 0.0;
  double mean_kl = 0.0;
  double clip_fraction = 0.0;
  double mean_length = 0.0;
};

struct TrainLog {
  std::vector<TrainLogRow> rows;
};

struct TrainResult {
  PolicyParams params;
  TrainLog log;
  bool diverged = false;
  std::string error;
};

using StepCallback = std::function<void(const TrainLogRow&, const PolicyParams&)>;

/// On-policy GRPO: every step snapshots (per snapshot_interval), samples a
/// batch of tasks, rolls out groups from the snapshot, normalizes rewards
/// per group and takes one gradient step. On divergence, returns the last
/// finite parameters with diverged = true.
TrainResult train(std::span<const TaskRecord> dataset, const PolicyEnv& env,
                  const GrpoConfig& cfg, PolicyParams init,
                  const StepCallback& on_step = {});

/// Runs fn(i) for i in [0, n) on up to `workers` threads.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace vrcap
