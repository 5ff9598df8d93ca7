#include "vrcap/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vrcap/grpo.hpp"
#include "vrcap/rewards.hpp"
#include "vrcap/taskgen.hpp"

namespace vrcap {

std::string_view to_string(EvalMode m) {
  switch (m) {
    case EvalMode::skip_retrieval: return "skip_retrieval";
    case EvalMode::retrieval: return "retrieval";
    case EvalMode::wrong_demo: return "wrong_demo";
  }
  return "?";
}

EvalMode eval_mode_from_string(std::string_view s) {
  if (s == "skip" || s == "skip_retrieval" || s == "skip-retrieval") return EvalMode::skip_retrieval;
  if (s == "retrieval") return EvalMode::retrieval;
  if (s == "wrong-demo" || s == "wrong_demo") return EvalMode::wrong_demo;
  throw ConfigError("unknown eval mode '" + std::string(s) + "'");
}

void EvalConfig::validate() const {
  if (queries_per_count < 1) throw ConfigError("eval: queries_per_count must be >= 1");
  if (concept_counts.empty()) throw ConfigError("eval: concept_counts is empty");
  for (int m : concept_counts)
    if (m < 1) throw ConfigError("eval: concept counts must be >= 1");
  if (k < 0) throw ConfigError("eval: k must be >= 0");
  if (!(noise_sigma >= 0.0)) throw ConfigError("eval: noise_sigma must be >= 0");
  if (!(variation_level >= 0.0 && variation_level <= 1.0))
    throw ConfigError("eval: variation_level must lie in [0,1]");
  if (max_len < 1) throw ConfigError("eval: max_len must be >= 1");
  if (length_bucket < 1) throw ConfigError("eval: length_bucket must be >= 1");
  if (workers < 1) throw ConfigError("eval: workers must be >= 1");
}

std::vector<std::string> extract_mentions(const Vocabulary& vocab, const TokenSequence& output,
                                          std::span<const std::string> name_vocab,
                                          bool case_insensitive) {
  return matched_gold_names(vocab, output, name_vocab, case_insensitive);
}

namespace {

// Occurrences of a (possibly multi-word) name, counted without overlap.
long long count_occurrences(std::span<const std::string> words, std::string_view name,
                            bool case_insensitive) {
  std::vector<std::string> parts;
  std::istringstream is{std::string(name)};
  for (std::string w; is >> w;) parts.push_back(case_insensitive ? to_lower(w) : w);
  if (parts.empty()) return 0;
  long long n = 0;
  for (std::size_t i = 0; i + parts.size() <= words.size();) {
    bool hit = true;
    for (std::size_t j = 0; j < parts.size() && hit; ++j)
      hit = (case_insensitive ? to_lower(words[i + j]) : words[i + j]) == parts[j];
    if (hit) {
      ++n;
      i += parts.size();
    } else {
      ++i;
    }
  }
  return n;
}

}  // namespace

GroundingScore grounding_scores(const Vocabulary& vocab, std::span<const TokenSequence> outputs,
                                std::span<const std::vector<std::string>> golds,
                                std::span<const std::string> name_vocab,
                                bool case_insensitive) {
  if (outputs.size() != golds.size())
    throw ContractError("grounding_scores: outputs and golds differ in length");
  GroundingScore s;
  double macro_p = 0.0, macro_r = 0.0;
  long long recall_queries = 0;
  for (std::size_t q = 0; q < outputs.size(); ++q) {
    const auto mentions = extract_mentions(vocab, outputs[q], name_vocab, case_insensitive);
    std::set<std::string> gold_set;
    for (const auto& g : golds[q]) gold_set.insert(case_insensitive ? to_lower(g) : g);
    long long correct = 0;
    for (const auto& m : mentions) correct += gold_set.count(case_insensitive ? to_lower(m) : m);
    const auto words = vocab.words_of(outputs[q]);
    for (const auto& m : mentions) s.mention_occurrences += count_occurrences(words, m, case_insensitive);

    s.correct_mentions += correct;
    s.total_mentions += static_cast<long long>(mentions.size());
    s.total_gold += static_cast<long long>(gold_set.size());
    ++s.queries;
    if (mentions.empty()) {
      ++s.queries_without_mentions;
    } else {
      macro_p += static_cast<double>(correct) / static_cast<double>(mentions.size());
    }
    if (!gold_set.empty()) {
      macro_r += static_cast<double>(correct) / static_cast<double>(gold_set.size());
      ++recall_queries;
    }
  }
  finalize_counts(s);
  const long long with_mentions = s.queries - s.queries_without_mentions;
  s.macro_precision = with_mentions > 0 ? macro_p / static_cast<double>(with_mentions) : 0.0;
  s.macro_recall = recall_queries > 0 ? macro_r / static_cast<double>(recall_queries) : 0.0;
  return s;
}

LengthStats length_stats(std::span<const TokenSequence> outputs, int bucket_width) {
  if (bucket_width < 1) throw ContractError("length_stats: bucket width must be >= 1");
  LengthStats st;
  st.bucket_width = bucket_width;
  if (outputs.empty()) return st;
  st.empty = false;
  std::vector<std::size_t> lens;
  lens.reserve(outputs.size());
  for (const auto& o : outputs) lens.push_back(o.content_length());
  std::sort(lens.begin(), lens.end());
  st.mean = static_cast<double>(std::accumulate(lens.begin(), lens.end(), std::size_t{0})) /
            static_cast<double>(lens.size());
  const std::size_t n = lens.size();
  st.median = n % 2 == 1 ? static_cast<double>(lens[n / 2])
                         : 0.5 * static_cast<double>(lens[n / 2 - 1] + lens[n / 2]);
  st.histogram.assign(lens.back() / static_cast<std::size_t>(bucket_width) + 1, 0);
  for (auto l : lens) ++st.histogram[l / static_cast<std::size_t>(bucket_width)];
  return st;
}

std::map<int, std::string> eval_names(const World& world, const Vocabulary& vocab,
                                      std::uint64_t seed) {
  std::vector<const Entity*> ents;
  for (const auto& e : world.entities) ents.push_back(&e);
  return assign_names(ents, derive_seed(seed, {0x6e616d6573ULL}), vocab.config().names);
}

namespace {

struct QueryPlan {
  int m = 0;
  TaskRecord task;
  std::vector<std::string> query_names;
  std::vector<std::string> scored_gold;
  int top1_hits = 0;
  int top1_total = 0;
};

std::vector<const Entity*> draw_entities(const World& world, std::size_t m,
                                         const std::set<int>& exclude, std::mt19937_64& rng) {
  std::vector<const Entity*> pool;
  for (const auto& e : world.entities)
    if (!exclude.contains(e.entity_id)) pool.push_back(&e);
  if (pool.size() < m) throw ConfigError("eval: not enough entities for the protocol");
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> d(i, pool.size() - 1);
    std::swap(pool[i], pool[d(rng)]);
  }
  pool.resize(m);
  return pool;
}

// Demonstrations sorted by name, the order an exact retrieval returns them in.
std::vector<Demonstration> demos_for(const World& world, std::vector<const Entity*> ents,
                                     const std::map<int, std::string>& names) {
  std::vector<Demonstration> out;
  for (const Entity* e : ents) {
    const auto& name = names.at(e->entity_id);
    out.push_back({name, reference_view(world, *e), describe_entity(*e, name)});
  }
  std::sort(out.begin(), out.end(),
            [](const Demonstration& a, const Demonstration& b) { return a.name < b.name; });
  return out;
}

QueryPlan plan_query(const Vocabulary& vocab, const World& world, const RetrievalIndex* db,
                     const std::map<int, std::string>& names, const EvalProtocol& protocol,
                     const EvalConfig& cfg, int m, int q) {
  const std::uint64_t seed =
      derive_seed(cfg.seed, {0x6576616cULL, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(q)});
  std::mt19937_64 rng(seed);
  const auto& wc = world.config;

  QueryPlan p;
  p.m = m;
  const auto query_ents = draw_entities(world, static_cast<std::size_t>(m), {}, rng);
  Scene scene = compose_scene(wc, query_ents, wc.scene_width, wc.scene_height,
                              cfg.variation_level, derive_seed(seed, {1}));
  for (const Entity* e : query_ents) p.query_names.push_back(names.at(e->entity_id));

  TaskRecord& t = p.task;
  t.record_id = static_cast<std::int64_t>(m) * 1000000 + q;
  t.kind = m == 1 ? TaskKind::ICT1 : TaskKind::ICTM;
  const auto bank = eval_caption_templates();
  t.instruction = vocab.encode_terminated(
      std::string(bank[std::uniform_int_distribution<std::size_t>(0, bank.size() - 1)(rng)]));

  switch (protocol.mode) {
    case EvalMode::skip_retrieval:
      t.demonstrations = demos_for(world, query_ents, names);
      p.scored_gold = p.query_names;
      break;
    case EvalMode::retrieval: {
      std::vector<EmbeddingVector> regions;
      for (std::size_t i = 0; i < scene.views.size(); ++i)
        regions.push_back(embed_view(scene.views[i], cfg.noise_sigma, derive_seed(seed, {2, i}), wc.embed_dim));
      for (std::size_t i = 0; i < regions.size(); ++i) {
        const auto top = retrieve(*db, std::span(regions).subspan(i, 1), 1);
        p.top1_hits += top.records.front().entity_id == scene.views[i].entity_id ? 1 : 0;
        ++p.top1_total;
      }
      const int k = protocol.k > 0 ? protocol.k : m;
      const auto got = retrieve(*db, regions, k);
      t.demonstrations = make_demonstrations(
          got.records, k, [&](int id) { return reference_view(world, world.entity(id)); });
      p.scored_gold = p.query_names;
      break;
    }
    case EvalMode::wrong_demo: {
      std::set<int> used;
      for (const Entity* e : query_ents) used.insert(e->entity_id);
      t.demonstrations = demos_for(world, draw_entities(world, static_cast<std::size_t>(m), used, rng), names);
      // Scored against the demonstrated names: the score measures copying.
      for (const auto& d : t.demonstrations) p.scored_gold.push_back(d.name);
      break;
    }
  }
  t.query = std::move(scene);
  std::vector<std::string> gold;
  for (const auto& d : t.demonstrations) gold.push_back(d.name);
  t.gold.value = std::move(gold);
  return p;
}

}  // namespace

EvalReport run_protocol(const PolicyParams& params, const FeatureLayout& layout,
                        const Vocabulary& vocab, const World& world,
                        const RetrievalIndex* database, const EvalProtocol& protocol,
                        const EvalConfig& cfg) {
  cfg.validate();
  if (protocol.mode == EvalMode::retrieval && database == nullptr)
    throw ConfigError("eval: retrieval mode needs a concept database");
  if (protocol.k < 0) throw ConfigError("eval: k must be >= 0");

  std::map<int, std::string> names;
  if (database) {
    for (const auto& r : database->records()) names[r.entity_id] = r.name;
    for (const auto& e : world.entities)
      if (!names.contains(e.entity_id))
        throw ConfigError("eval: database does not cover entity " + std::to_string(e.entity_id));
  } else {
    names = eval_names(world, vocab, cfg.seed);
  }
  std::vector<std::string> name_vocab;
  for (const auto& [id, n] : names) name_vocab.push_back(n);

  std::vector<std::pair<int, int>> jobs;
  for (int m : cfg.concept_counts)
    for (int q = 0; q < cfg.queries_per_count; ++q) jobs.emplace_back(m, q);

  std::vector<QueryPlan> plans(jobs.size());
  std::vector<TokenSequence> outputs(jobs.size());
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t j) {
    plans[j] = plan_query(vocab, world, database, names, protocol, cfg, jobs[j].first, jobs[j].second);
    outputs[j] = greedy_sequence(params, layout, vocab, plans[j].task, cfg.max_len);
  });

  EvalReport rep;
  rep.mode = protocol.mode;
  rep.k = protocol.mode == EvalMode::retrieval ? protocol.k : 0;
  rep.seed = cfg.seed;
  if (protocol.mode == EvalMode::wrong_demo)
    rep.note = "wrong-demonstration protocol: scores measure how often the mismatched "
               "demonstration names are copied; lower is better";

  std::vector<std::vector<std::string>> golds;
  for (const auto& p : plans) golds.push_back(p.scored_gold);
  rep.overall = grounding_scores(vocab, outputs, golds, name_vocab);
  for (int m : cfg.concept_counts) {
    std::vector<TokenSequence> o;
    std::vector<std::vector<std::string>> g;
    for (std::size_t j = 0; j < jobs.size(); ++j)
      if (jobs[j].first == m) {
        o.push_back(outputs[j]);
        g.push_back(golds[j]);
      }
    rep.by_count[m] = grounding_scores(vocab, o, g, name_vocab);
  }
  rep.lengths = length_stats(outputs, cfg.length_bucket);

  int hits = 0, total = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto& p = plans[j];
    hits += p.top1_hits;
    total += p.top1_total;
    EvalSample s;
    s.concept_count = p.m;
    s.query_names = p.query_names;
    for (const auto& d : p.task.demonstrations) s.demo_names.push_back(d.name);
    s.scored_gold = p.scored_gold;
    s.mentions = extract_mentions(vocab, outputs[j], name_vocab);
    s.output = vocab.decode(outputs[j]);
    s.length = outputs[j].content_length();
    rep.samples.push_back(std::move(s));
  }
  if (total > 0) rep.retrieval_top1_accuracy = static_cast<double>(hits) / total;
  return rep;
}

namespace {

nlohmann::json score_json(const GroundingScore& s) {
  return {{"precision", s.precision},
          {"recall", s.recall},
          {"f1", s.f1},
          {"correct_mentions", s.correct_mentions},
          {"total_mentions", s.total_mentions},
          {"total_gold", s.total_gold},
          {"mention_occurrences", s.mention_occurrences},
          {"macro_precision", s.macro_precision},
          {"macro_recall", s.macro_recall},
          {"queries", s.queries},
          {"queries_without_mentions", s.queries_without_mentions}};
}

}  // namespace

std::string report_json(const EvalReport& r) {
  nlohmann::json j;
  j["mode"] = to_string(r.mode);
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["checkpoint_hash"] = r.checkpoint_hash;
  if (!r.note.empty()) j["note"] = r.note;
  j["overall"] = score_json(r.overall);
  nlohmann::json by = nlohmann::json::object();
  for (const auto& [m, s] : r.by_count) by[std::to_string(m)] = score_json(s);
  j["by_concept_count"] = by;
  j["length"] = {{"empty", r.lengths.empty},
                 {"mean", r.lengths.mean},
                 {"median", r.lengths.median},
                 {"bucket_width", r.lengths.bucket_width},
                 {"histogram", r.lengths.histogram}};
  if (r.mode == EvalMode::retrieval) j["retrieval_top1_accuracy"] = r.retrieval_top1_accuracy;
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"concept_count", s.concept_count},
                       {"query_names", s.query_names},
                       {"demo_names", s.demo_names},
                       {"scored_gold", s.scored_gold},
                       {"mentions", s.mentions},
                       {"output", s.output},
                       {"length", s.length}});
  j["samples"] = samples;
  return j.dump(2) + "\n";
}

std::string report_csv(const EvalReport& r) {
  std::ostringstream os;
  os.precision(17);
  if (!r.note.empty()) os << "# " << r.note << "\n";
  os << "mode,concept_count,queries,precision,recall,f1,correct_mentions,total_mentions,"
        "total_gold,macro_precision,macro_recall,mean_length\n";
  auto row = [&](const std::string& label, const GroundingScore& s, double mean_len) {
    os << to_string(r.mode) << ',' << label << ',' << s.queries << ',' << s.precision << ','
       << s.recall << ',' << s.f1 << ',' << s.correct_mentions << ',' << s.total_mentions << ','
       << s.total_gold << ',' << s.macro_precision << ',' << s.macro_recall << ',' << mean_len
       << '\n';
  };
  for (const auto& [m, s] : r.by_count) {
    double sum = 0.0;
    long long n = 0;
    for (const auto& smp : r.samples)
      if (smp.concept_count == m) {
        sum += static_cast<double>(smp.length);
        ++n;
      }
    row(std::to_string(m), s, n > 0 ? sum / static_cast<double>(n) : 0.0);
  }
  row("all", r.overall, r.lengths.mean);
  return os.str();
}

}  // namespace vrcap
