#include "vrcap/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace vrcap {

RetrievalIndex build_index(std::vector<ConceptRecord> records) {
  if (records.empty()) throw ContractError("build_index: no records");
  const std::size_t dim = records.front().embedding.dim();
  std::set<std::string> names;
  for (const auto& r : records) {
    if (r.embedding.dim() != dim) throw ContractError("build_index: dimension mismatch");
    if (!names.insert(r.name).second)
      throw ContractError("build_index: duplicate name '" + r.name + "'");
    for (double v : r.embedding.values)
      if (!std::isfinite(v)) throw ContractError("build_index: non-finite embedding");
  }
  std::sort(records.begin(), records.end(),
            [](const ConceptRecord& a, const ConceptRecord& b) { return a.name < b.name; });
  RetrievalIndex idx;
  idx.records_ = std::move(records);
  idx.dim_ = dim;
  return idx;
}

RetrievalResult retrieve(const RetrievalIndex& index,
                         std::span<const EmbeddingVector> query_embeddings, int k) {
  if (k < 1) throw ContractError("retrieve: k must be >= 1");
  if (query_embeddings.empty()) throw ContractError("retrieve: no query regions");
  for (const auto& q : query_embeddings)
    if (q.dim() != index.dim()) throw ContractError("retrieve: dimension mismatch");

  // The best rank a concept reaches in any per-region ranking is decided by
  // its distance to the nearest region.
  const auto recs = index.records();
  std::vector<std::pair<double, std::size_t>> best;
  best.reserve(recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& q : query_embeddings) d = std::min(d, euclidean_distance(q, recs[i].embedding));
    best.emplace_back(d, i);
  }
  // Records are name-sorted, so index order is the lexicographic tie-break.
  std::sort(best.begin(), best.end());

  RetrievalResult out;
  out.truncated = static_cast<std::size_t>(k) > recs.size();
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(k), recs.size());
  for (std::size_t j = 0; j < n; ++j) {
    out.records.push_back(recs[best[j].second]);
    out.distances.push_back(best[j].first);
  }
  return out;
}

std::vector<Demonstration> make_demonstrations(std::span<const ConceptRecord> retrieved,
                                               int limit, const ViewLookup& view_of) {
  if (limit < 1) throw ContractError("make_demonstrations: limit must be >= 1");
  std::vector<Demonstration> out;
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(limit), retrieved.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = retrieved[i];
    View v;
    v.entity_id = r.entity_id;
    if (view_of) v = view_of(r.entity_id);
    out.push_back({r.name, std::move(v), r.info});
  }
  return out;
}

View reference_view(const World& world, const Entity& entity) {
  const auto& wc = world.config;
  return render_view(wc, entity, wc.scene_width, wc.scene_height, 0.0,
                     derive_seed(world.seed, {0x726566ULL, static_cast<std::uint64_t>(entity.entity_id)}));
}

std::vector<ConceptRecord> build_concept_database(const World& world,
                                                  const std::map<int, std::string>& names) {
  std::vector<ConceptRecord> out;
  for (const auto& e : world.entities) {
    const auto it = names.find(e.entity_id);
    if (it == names.end()) throw ContractError("build_concept_database: unnamed entity");
    const View v = reference_view(world, e);
    out.push_back({it->second, describe_entity(e, it->second),
                   embed_view(v, 0.0, 0, world.config.embed_dim), e.entity_id});
  }
  return out;
}

}  // namespace vrcap
