#include "vrcap/commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vrcap/io.hpp"

namespace vrcap {

std::string ArtifactPaths::snapshot(int step) const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "/snapshots/step_%06d.bin", step);
  return dir + buf;
}
std::string ArtifactPaths::report_json(EvalMode m) const {
  return dir + "/report_" + std::string(to_string(m)) + ".json";
}
std::string ArtifactPaths::report_csv(EvalMode m) const {
  return dir + "/report_" + std::string(to_string(m)) + ".csv";
}

Pipeline::Pipeline(RunConfig c)
    : cfg(std::move(c)),
      world(gen_world(cfg.world, cfg.world_seed())),
      vocab(cfg.vocab_config()),
      layout(vocab, cfg.policy) {}

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::filesystem::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
  }
  return kExitUsage;
}

ArtifactStamp stamp_of(const RunConfig& cfg) { return {config_hash(cfg), cfg.seed}; }

CheckpointHeader header_of(const Pipeline& p, int step) {
  return {static_cast<int>(p.vocab.size()), p.layout.dim(), p.vocab.hash(), config_hash(p.cfg),
          p.cfg.seed, step};
}

PolicyParams load_compatible(const Pipeline& p, const std::string& path) {
  CheckpointHeader h;
  PolicyParams params = read_checkpoint(path, &h);
  if (h.vocab_hash != p.vocab.hash() || h.vocab_size != static_cast<int>(p.vocab.size()) ||
      h.feature_dim != p.layout.dim())
    throw ConfigError("checkpoint '" + path + "' does not match this config's vocabulary/features");
  return params;
}

std::vector<ConceptRecord> concept_records(const Pipeline& p) {
  return build_concept_database(p.world, eval_names(p.world, p.vocab, p.cfg.eval.seed));
}

}  // namespace

int cmd_gen_data(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Pipeline p(cfg);
    const auto paths = p.paths();
    Dataset ds = build_dataset(p.world, p.vocab, p.cfg.dataset);
    write_dataset(paths.dataset(), ds.records);
    write_database(paths.concepts(), concept_records(p));
    write_manifest(paths.manifest(), ds.manifest, stamp_of(p.cfg), p.vocab.hash(),
                   {"dataset.jsonl", "concepts.jsonl", "config.json"});
    write_text(paths.config(), to_json(p.cfg));
    for (const auto& w : ds.manifest.warnings) err << "warning: " << w << '\n';
    out << "wrote " << ds.records.size() << " records to " << paths.dataset() << '\n';
    return kExitOk;
  });
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Pipeline p(cfg);
    const auto paths = p.paths();
    const auto records = read_dataset(paths.dataset());
    if (records.empty()) throw ConfigError("dataset '" + paths.dataset() + "' is empty");
    if (std::filesystem::exists(paths.manifest()) &&
        read_manifest_config_hash(paths.manifest()) != config_hash(p.cfg))
      err << "note: dataset was generated under a different config hash\n";

    PolicyEnv env{p.vocab, p.layout, p.cfg.rewards, p.cfg.policy.max_len};
    const auto t0 = std::chrono::steady_clock::now();
    const int every = p.cfg.checkpoint_every;
    const int total = p.cfg.grpo.steps;
    auto on_step = [&](const TrainLogRow& row, const PolicyParams& params) {
      const int done = row.step + 1;
      if (every > 0 && done % every == 0 && done < total)
        write_checkpoint(paths.snapshot(done), params, header_of(p, done));
    };
    TrainResult res = train(records, env, p.cfg.grpo, init_params(p.layout, p.vocab, p.cfg.policy), on_step);

    const int steps_done = static_cast<int>(res.log.rows.size());
    write_checkpoint(paths.checkpoint(), res.params, header_of(p, steps_done));
    {
      std::ostringstream log;
      write_trainlog(log, res.log, stamp_of(p.cfg));
      write_text(paths.trainlog(), log.str());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (res.diverged) {
      err << "training diverged: " << res.error << "\nlast good parameters saved to "
          << paths.checkpoint() << '\n';
      return kExitDiverged;
    }
    out << "trained " << steps_done << " steps in " << secs << " s; checkpoint "
        << paths.checkpoint() << '\n';
    if (!res.log.rows.empty() && res.log.rows.back().mean_ict_reward)
      out << "last-step ICT reward " << *res.log.rows.back().mean_ict_reward << '\n';
    return kExitOk;
  });
}

int cmd_eval(const RunConfig& cfg, const EvalRequest& req, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Pipeline p(cfg);
    const auto paths = p.paths();
    const std::string ckpt = req.checkpoint.empty() ? paths.checkpoint() : req.checkpoint;
    const PolicyParams params = load_compatible(p, ckpt);

    std::optional<RetrievalIndex> db;
    if (std::filesystem::exists(paths.concepts())) {
      db = build_index(read_database(paths.concepts()));
    } else if (req.mode == EvalMode::retrieval) {
      throw ConfigError("retrieval mode needs the concept database '" + paths.concepts() +
                        "' (run gen-data first)");
    }
    EvalProtocol proto{req.mode, req.k.value_or(p.cfg.retrieval.k)};
    if (proto.k < 1) throw ConfigError("--k must be >= 1");
    EvalReport rep = run_protocol(params, p.layout, p.vocab, p.world, db ? &*db : nullptr, proto, p.cfg.eval);
    rep.checkpoint_hash = params_hash(params);
    write_text(paths.report_json(req.mode), report_json(rep));
    write_text(paths.report_csv(req.mode), report_csv(rep));
    if (!rep.note.empty()) out << "note: " << rep.note << '\n';
    out << to_string(req.mode) << ": precision " << rep.overall.precision << " recall "
        << rep.overall.recall << " f1 " << rep.overall.f1 << " mean length " << rep.lengths.mean
        << '\n';
    return kExitOk;
  });
}

int cmd_check(const RunConfig& cfg, const CheckOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Vocabulary vocab(cfg.vocab_config());
    const CheckReport rep = run_checks(vocab, options);
    out << rep.to_text();
    if (!rep.all_passed()) {
      err << "failed checks:";
      for (const auto& i : rep.items)
        if (!i.passed) err << ' ' << i.name << ';';
      err << '\n';
      return kExitCheck;
    }
    return kExitOk;
  });
}

int cmd_retrieve(const RunConfig& cfg, const std::vector<int>& entity_ids, int k,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Pipeline p(cfg);
    const auto paths = p.paths();
    const auto records = std::filesystem::exists(paths.concepts()) ? read_database(paths.concepts())
                                                                   : concept_records(p);
    const RetrievalIndex index = build_index(records);
    if (entity_ids.empty()) throw ConfigError("retrieve: give at least one entity id");
    std::vector<EmbeddingVector> regions;
    const auto& wc = p.world.config;
    for (std::size_t i = 0; i < entity_ids.size(); ++i) {
      const Entity& e = p.world.entity(entity_ids[i]);
      const View v = render_view(wc, e, wc.scene_width, wc.scene_height, p.cfg.eval.variation_level,
                                 derive_seed(p.cfg.seed, {0x71ULL, i}));
      regions.push_back(embed_view(v, p.cfg.retrieval.noise_sigma, derive_seed(p.cfg.seed, {0x72ULL, i}), wc.embed_dim));
    }
    const auto res = retrieve(index, regions, k);
    if (res.truncated) err << "note: k=" << k << " exceeds the database size " << index.size() << '\n';
    for (std::size_t i = 0; i < res.records.size(); ++i)
      out << i + 1 << '\t' << res.records[i].name << "\tentity " << res.records[i].entity_id
          << "\tdistance " << res.distances[i] << '\n';
    return kExitOk;
  });
}

int cmd_make_oracle(const RunConfig& cfg, const std::string& path, std::ostream& out,
                    std::ostream& err) {
  return guarded(err, [&] {
    Pipeline p(cfg);
    write_checkpoint(path, make_copy_oracle_params(p.layout, p.vocab), header_of(p, 0));
    out << "wrote copy-oracle checkpoint " << path << '\n';
    return kExitOk;
  });
}

}  // namespace vrcap
