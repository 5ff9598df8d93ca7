#include "vrcap/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace vrcap {

void PolicyConfig::validate() const {
  if (max_len < 1) throw ConfigError("policy: max_len must be >= 1");
  if (query_buckets < 1) throw ConfigError("policy: query_buckets must be >= 1");
  if (!std::isfinite(init_eos_bias) || !std::isfinite(init_word_bias) ||
      !std::isfinite(init_coord_prior) || !(init_scale >= 0.0))
    throw ConfigError("policy: invalid initialization");
}

FeatureLayout::FeatureLayout(const Vocabulary& vocab, const PolicyConfig& config) {
  config.validate();
  instruction_size_ = static_cast<int>(vocab.word_count());
  name_size_ = static_cast<int>(vocab.name_count());
  coord_size_ = vocab.coord_cap() + 1;
  query_size_ = config.query_buckets;
  prev_size_ = static_cast<int>(vocab.size()) + 1;
  max_len_ = config.max_len;

  int off = 0;
  auto take = [&off](int n) {
    const int at = off;
    off += n;
    return at;
  };
  bias = take(1);
  kind = take(5);
  detail = take(1);
  instruction = take(instruction_size_);
  demo_names = take(name_size_);
  pending_names = take(name_size_);
  no_pending = take(1);
  overlap = take(2);
  target_coord = take(coord_size_);
  query = take(query_size_);
  position = take(max_len_);
  prev_token = take(prev_size_);
  dim_ = off;
}

namespace {

double shared_fraction(const View& demo, const View& query) {
  if (demo.visible_tokens.empty()) return 0.0;
  int shared = 0;
  for (int t : demo.visible_tokens)
    if (std::find(query.visible_tokens.begin(), query.visible_tokens.end(), t) !=
        query.visible_tokens.end())
      ++shared;
  return static_cast<double>(shared) / static_cast<double>(demo.visible_tokens.size());
}

void add_query_view(const View& v, int buckets, std::vector<double>& bag) {
  for (int t : v.visible_tokens) bag[static_cast<std::size_t>(t % buckets)] += 1.0;
  for (int t : v.variation_tokens) bag[static_cast<std::size_t>(t % buckets)] += 1.0;
}

}  // namespace

StaticContext encode_static(const FeatureLayout& layout, const Vocabulary& vocab,
                            const TaskRecord& task) {
  StaticContext ctx;
  auto& e = ctx.entries;
  e.push_back({layout.bias, 1.0});
  e.push_back({layout.kind + static_cast<int>(task.kind), 1.0});
  if (task.detail) e.push_back({layout.detail, 1.0});

  // Instruction word bag, normalized to unit total mass.
  std::vector<double> bag(static_cast<std::size_t>(layout.instruction_size()), 0.0);
  double words = 0.0;
  for (TokenId t : task.instruction.content()) {
    if (vocab.is_word(t)) {
      bag[static_cast<std::size_t>(t - vocab.word_begin())] += 1.0;
      words += 1.0;
    }
  }
  for (std::size_t i = 0; i < bag.size(); ++i)
    if (bag[i] > 0.0) e.push_back({layout.instruction + static_cast<int>(i), bag[i] / words});

  ctx.caption_task = is_ict_kind(task.kind);
  std::vector<std::pair<int, double>> slots;
  for (const auto& d : task.demonstrations) {
    const int slot = vocab.name_slot(d.name);
    if (slot < 0) continue;
    if (std::any_of(slots.begin(), slots.end(), [&](const auto& s) { return s.first == slot; }))
      continue;
    double match = 1.0;
    if (ctx.caption_task) {
      match = 0.0;
      if (const View* qv = task.query_view()) match = shared_fraction(d.view, *qv);
      if (const Scene* qs = task.query_scene())
        for (const auto& v : qs->views) match = std::max(match, shared_fraction(d.view, v));
    }
    slots.emplace_back(slot, match);
  }
  std::sort(slots.begin(), slots.end());
  for (const auto& [slot, match] : slots) {
    ctx.demo_slots.push_back(slot);
    ctx.demo_match.push_back(match);
    if (match > 0.0) e.push_back({layout.demo_names + slot, match});
  }

  std::vector<double> qbag(static_cast<std::size_t>(layout.query_size()), 0.0);
  if (const View* qv = task.query_view()) {
    add_query_view(*qv, layout.query_size(), qbag);
    if (task.kind == TaskKind::OCT && !task.demonstrations.empty()) {
      const double f = shared_fraction(task.demonstrations.front().view, *qv);
      e.push_back({layout.overlap, f});
      e.push_back({layout.overlap + 1, 1.0 - f});
    }
  } else if (const Scene* qs = task.query_scene()) {
    for (const auto& v : qs->views) add_query_view(v, layout.query_size(), qbag);
    if (task.kind == TaskKind::VLT && task.target_index >= 0 &&
        task.target_index < static_cast<int>(qs->views.size())) {
      const BBox& b = qs->views[static_cast<std::size_t>(task.target_index)].bbox;
      ctx.target_box = {b.x1, b.y1, b.x2, b.y2};
    }
  }
  double qsum = 0.0;
  for (double v : qbag) qsum += v;
  for (std::size_t i = 0; i < qbag.size(); ++i)
    if (qbag[i] > 0.0) e.push_back({layout.query + static_cast<int>(i), qbag[i] / qsum});
  return ctx;
}

ContextFeatures step_features(const FeatureLayout& layout, const Vocabulary& vocab,
                              const StaticContext& ctx, std::span<const TokenId> prefix) {
  ContextFeatures phi;
  phi.entries = ctx.entries;
  auto& e = phi.entries;

  if (ctx.caption_task && !ctx.demo_slots.empty()) {
    int pending = 0;
    for (std::size_t k = 0; k < ctx.demo_slots.size(); ++k) {
      const int slot = ctx.demo_slots[k];
      const TokenId tok = vocab.name_begin() + slot;
      if (std::find(prefix.begin(), prefix.end(), tok) == prefix.end()) {
        if (ctx.demo_match[k] > 0.0) e.push_back({layout.pending_names + slot, ctx.demo_match[k]});
        ++pending;
      }
    }
    if (pending == 0) e.push_back({layout.no_pending, 1.0});
  }

  const auto pos = prefix.size();
  if (!ctx.target_box.empty() && pos < ctx.target_box.size()) {
    const int c = std::clamp(ctx.target_box[pos], 0, layout.coord_size() - 1);
    e.push_back({layout.target_coord + c, 1.0});
  }
  e.push_back({layout.position + static_cast<int>(std::min<std::size_t>(pos, layout.max_len() - 1)), 1.0});
  const int prev = prefix.empty() ? layout.prev_size() - 1 : prefix.back();
  e.push_back({layout.prev_token + prev, 1.0});
  return phi;
}

ContextFeatures encode_context(const FeatureLayout& layout, const Vocabulary& vocab,
                               const TaskRecord& task, std::span<const TokenId> prefix) {
  return step_features(layout, vocab, encode_static(layout, vocab, task), prefix);
}

bool PolicyParams::all_finite() const {
  return std::all_of(theta.begin(), theta.end(), [](double v) { return std::isfinite(v); });
}

PolicyParams init_params(const FeatureLayout& layout, const Vocabulary& vocab,
                         const PolicyConfig& config) {
  PolicyParams p(static_cast<int>(vocab.size()), layout.dim());
  if (config.init_scale > 0.0) {
    std::mt19937_64 rng(derive_seed(config.init_seed, {0x696e6974ULL}));
    std::normal_distribution<double> n(0.0, config.init_scale);
    for (double& v : p.theta) v = n(rng);
  }
  p.at(kEos, layout.bias) += config.init_eos_bias;
  for (std::size_t w = 0; w < vocab.word_count(); ++w)
    p.at(vocab.word_begin() + static_cast<TokenId>(w), layout.bias) += config.init_word_bias;
  for (int c = 0; c < layout.coord_size(); ++c)
    p.at(vocab.coord_token(c), layout.target_coord + c) += config.init_coord_prior;
  return p;
}

PolicyParams make_copy_oracle_params(const FeatureLayout& layout, const Vocabulary& vocab) {
  PolicyParams p(static_cast<int>(vocab.size()), layout.dim());
  // Pending names outrank everything; lower slots win ties by a small margin
  // so the emission order is fixed.
  for (int s = 0; s < layout.name_size(); ++s)
    p.at(vocab.name_begin() + s, layout.pending_names + s) = 20.0 - 1e-3 * s;
  p.at(kEos, layout.no_pending) = 20.0;
  return p;
}

void logits(const PolicyParams& params, const ContextFeatures& phi, std::span<double> out) {
  const int F = params.feature_dim;
  for (int v = 0; v < params.vocab_size; ++v) {
    const double* row = params.theta.data() + static_cast<std::size_t>(v) * F;
    double z = 0.0;
    for (const auto& fe : phi.entries) z += row[fe.index] * fe.value;
    out[static_cast<std::size_t>(v)] = z;
  }
}

namespace {

// Tempered log-softmax in place; returns nothing, `buf` holds log-probs.
void log_softmax(std::span<double> buf, double temperature) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double& z : buf) {
    z /= temperature;
    mx = std::max(mx, z);
  }
  double s = 0.0;
  for (double z : buf) s += std::exp(z - mx);
  const double lse = mx + std::log(s);
  for (double& z : buf) z -= lse;
}

void check_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw ContractError("temperature must be finite and > 0");
}

}  // namespace

std::vector<double> token_distribution(const PolicyParams& params, const ContextFeatures& phi,
                                       double temperature) {
  check_temperature(temperature);
  std::vector<double> buf(static_cast<std::size_t>(params.vocab_size));
  logits(params, phi, buf);
  log_softmax(buf, temperature);
  for (double& v : buf) v = std::exp(v);
  return buf;
}

Rollout sample_sequence(const PolicyParams& params, const FeatureLayout& layout,
                        const Vocabulary& vocab, const TaskRecord& task, double temperature,
                        int max_len, std::uint64_t seed) {
  check_temperature(temperature);
  if (max_len < 1) throw ContractError("sample_sequence: max_len must be >= 1");
  const StaticContext ctx = encode_static(layout, vocab, task);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> buf(static_cast<std::size_t>(params.vocab_size));

  Rollout r;
  auto& toks = r.sequence.tokens;
  while (static_cast<int>(toks.size()) < max_len) {
    ContextFeatures phi = step_features(layout, vocab, ctx, toks);
    logits(params, phi, buf);
    log_softmax(buf, temperature);
    const double u = u01(rng);
    double acc = 0.0;
    TokenId pick = params.vocab_size - 1;
    for (int v = 0; v < params.vocab_size; ++v) {
      acc += std::exp(buf[static_cast<std::size_t>(v)]);
      if (u < acc) {
        pick = v;
        break;
      }
    }
    toks.push_back(pick);
    r.logprobs_old.push_back(buf[static_cast<std::size_t>(pick)]);
    r.steps.push_back(std::move(phi));
    if (pick == kEos) break;
  }
  r.logprobs_ref = r.logprobs_old;
  return r;
}

TokenSequence greedy_sequence(const PolicyParams& params, const FeatureLayout& layout,
                              const Vocabulary& vocab, const TaskRecord& task, int max_len) {
  const StaticContext ctx = encode_static(layout, vocab, task);
  std::vector<double> buf(static_cast<std::size_t>(params.vocab_size));
  TokenSequence seq;
  while (static_cast<int>(seq.tokens.size()) < max_len) {
    logits(params, step_features(layout, vocab, ctx, seq.tokens), buf);
    const auto best = static_cast<TokenId>(std::max_element(buf.begin(), buf.end()) - buf.begin());
    seq.tokens.push_back(best);
    if (best == kEos) break;
  }
  return seq;
}

std::vector<ContextFeatures> encode_steps(const FeatureLayout& layout, const Vocabulary& vocab,
                                          const TaskRecord& task, const TokenSequence& seq) {
  if (!seq.valid(vocab.size())) throw ContractError("sequence has out-of-vocabulary tokens");
  const StaticContext ctx = encode_static(layout, vocab, task);
  std::vector<ContextFeatures> steps;
  steps.reserve(seq.tokens.size());
  for (std::size_t t = 0; t < seq.tokens.size(); ++t)
    steps.push_back(step_features(layout, vocab, ctx, std::span(seq.tokens).first(t)));
  return steps;
}

std::vector<double> sequence_logprobs(const PolicyParams& params,
                                      std::span<const ContextFeatures> steps,
                                      std::span<const TokenId> tokens, double temperature) {
  check_temperature(temperature);
  if (steps.size() != tokens.size()) throw ContractError("sequence_logprobs: length mismatch");
  std::vector<double> buf(static_cast<std::size_t>(params.vocab_size));
  std::vector<double> out;
  out.reserve(tokens.size());
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (tokens[t] < 0 || tokens[t] >= params.vocab_size)
      throw ContractError("sequence_logprobs: token out of vocabulary");
    logits(params, steps[t], buf);
    log_softmax(buf, temperature);
    out.push_back(buf[static_cast<std::size_t>(tokens[t])]);
  }
  return out;
}

std::vector<double> logprob_sequence(const PolicyParams& params, const FeatureLayout& layout,
                                     const Vocabulary& vocab, const TaskRecord& task,
                                     const TokenSequence& seq, double temperature) {
  const auto steps = encode_steps(layout, vocab, task, seq);
  return sequence_logprobs(params, steps, seq.tokens, temperature);
}

void accumulate_logprob_grad(const PolicyParams& params, const ContextFeatures& phi,
                             TokenId token, double coeff, double temperature,
                             std::span<double> grad) {
  if (coeff == 0.0) return;
  const auto p = token_distribution(params, phi, temperature);
  const int F = params.feature_dim;
  const double scale = coeff / temperature;
  for (int v = 0; v < params.vocab_size; ++v) {
    const double d = ((v == token) ? 1.0 : 0.0) - p[static_cast<std::size_t>(v)];
    double* row = grad.data() + static_cast<std::size_t>(v) * F;
    for (const auto& fe : phi.entries) row[fe.index] += scale * d * fe.value;
  }
}

std::vector<double> grad_logprob(const PolicyParams& params,
                                 std::span<const ContextFeatures> steps,
                                 std::span<const TokenId> tokens, double temperature) {
  if (steps.size() != tokens.size()) throw ContractError("grad_logprob: length mismatch");
  std::vector<double> g(params.theta.size(), 0.0);
  for (std::size_t t = 0; t < tokens.size(); ++t)
    accumulate_logprob_grad(params, steps[t], tokens[t], 1.0, temperature, g);
  return g;
}

std::vector<double> grad_logprob(const PolicyParams& params, const FeatureLayout& layout,
                                 const Vocabulary& vocab, const TaskRecord& task,
                                 const TokenSequence& seq, double temperature) {
  const auto steps = encode_steps(layout, vocab, task, seq);
  return grad_logprob(params, steps, seq.tokens, temperature);
}

}  // namespace vrcap
