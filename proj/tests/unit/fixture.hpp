#pragma once
// Small shared setup for the unit tests.
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "vrcap/eval.hpp"
#include "vrcap/grpo.hpp"
#include "vrcap/policy.hpp"
#include "vrcap/rewards.hpp"
#include "vrcap/synthworld.hpp"
#include "vrcap/taskgen.hpp"
#include "vrcap/vocab.hpp"

namespace fx {

inline vrcap::VocabConfig vocab_config(int coord_cap = 8, int names = 24) {
  vrcap::VocabConfig v;
  v.coord_cap = coord_cap;
  v.names = vrcap::default_name_pool(names);
  return v;
}

struct Toy {
  vrcap::WorldConfig wc;
  vrcap::World world;
  vrcap::Vocabulary vocab;
  vrcap::PolicyConfig pc;
  vrcap::FeatureLayout layout;

  explicit Toy(std::uint64_t seed = 3, int coord_cap = 8)
      : world(vrcap::gen_world(wc, seed)),
        vocab(vocab_config(coord_cap)),
        layout(vocab, pc) {}

  [[nodiscard]] vrcap::TaskContext ctx() const {
    return {world, vocab, {0.5, vocab.config().names}};
  }
};

// Build an output sequence from text; `eos` appends the end token.
inline vrcap::TokenSequence seq(const vrcap::Vocabulary& v, const std::string& text,
                                bool eos = true) {
  return eos ? v.encode_terminated(text) : vrcap::TokenSequence{v.encode(text)};
}

// Dense reference forward pass: log softmax(theta . phi / T)[token].
inline double ref_logprob(const vrcap::PolicyParams& p, const vrcap::ContextFeatures& phi,
                          vrcap::TokenId tok, double T) {
  std::vector<double> dense(static_cast<std::size_t>(p.feature_dim), 0.0);
  for (const auto& e : phi.entries) dense[static_cast<std::size_t>(e.index)] += e.value;
  std::vector<long double> z(static_cast<std::size_t>(p.vocab_size));
  long double mx = -1e300L;
  for (int v = 0; v < p.vocab_size; ++v) {
    long double s = 0;
    for (int f = 0; f < p.feature_dim; ++f) s += static_cast<long double>(p.at(v, f)) * dense[static_cast<std::size_t>(f)];
    z[static_cast<std::size_t>(v)] = s / T;
    mx = std::max(mx, z[static_cast<std::size_t>(v)]);
  }
  long double sum = 0;
  for (auto x : z) sum += std::exp(x - mx);
  return static_cast<double>(z[static_cast<std::size_t>(tok)] - mx - std::log(sum));
}

}  // namespace fx
