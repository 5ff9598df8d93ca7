#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vrcap/core.hpp"
#include "vrcap/synthworld.hpp"
#include "vrcap/taskgen.hpp"

namespace vrcap {

struct ConceptRecord {
  std::string name;
  std::string info;
  EmbeddingVector embedding;
  int entity_id = 0;

  bool operator==(const ConceptRecord&) const = default;
};

/// Immutable concept database. Records are kept sorted by name so results do
/// not depend on insertion order.
class RetrievalIndex {
 public:
  [[nodiscard]] std::size_t size() const { return records_.size(); }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::span<const ConceptRecord> records() const { return records_; }

 private:
  friend RetrievalIndex build_index(std::vector<ConceptRecord> records);
  std::vector<ConceptRecord> records_;
  std::size_t dim_ = 0;
};

/// Throws ContractError on an empty list, mixed dimensions or duplicate names.
RetrievalIndex build_index(std::vector<ConceptRecord> records);

struct RetrievalResult {
  std::vector<ConceptRecord> records;
  // Distance of each returned concept to its nearest query region.
  std::vector<double> distances;
  // k exceeded the index size; every record was returned.
  bool truncated = false;
};

/// Ranks every (region, concept) pair by Euclidean distance and returns the k
/// nearest distinct concepts; ties break by name.
RetrievalResult retrieve(const RetrievalIndex& index,
                         std::span<const EmbeddingVector> query_embeddings, int k);

using ViewLookup = std::function<View(int entity_id)>;

/// Up to `limit` demonstrations in retrieval order. The view is a placeholder
/// carrying only the entity id unless `view_of` supplies the stored image.
std::vector<Demonstration> make_demonstrations(std::span<const ConceptRecord> retrieved,
                                               int limit, const ViewLookup& view_of = {});

/// Reference view stored for an entity in the personal database.
View reference_view(const World& world, const Entity& entity);

/// One record per entity, embedded from its reference view without noise.
std::vector<ConceptRecord> build_concept_database(const World& world,
                                                  const std::map<int, std::string>& names);

}  // namespace vrcap
