#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vrcap {

// Violated preconditions (wrong task kind, empty input, mismatched lengths).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid or infeasible configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TokenId = std::int32_t;

inline constexpr TokenId kEos = 0;
inline constexpr TokenId kUnk = 1;

/// Axis-aligned box on the integer scene grid, half-open: covers cells
/// [x1, x2) x [y1, y2).
struct BBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  [[nodiscard]] long long area() const {
    return static_cast<long long>(x2 - x1) * (y2 - y1);
  }
  [[nodiscard]] bool ordered() const { return x1 <= x2 && y1 <= y2; }
  // Coordinates are grid lines, so x2 == width is still inside the scene.
  [[nodiscard]] bool within(int width, int height) const {
    return ordered() && x1 >= 0 && y1 >= 0 && x2 <= width && y2 <= height;
  }
  [[nodiscard]] BBox shifted(int dx, int dy) const {
    return {x1 + dx, y1 + dy, x2 + dx, y2 + dy};
  }

  auto operator<=>(const BBox&) const = default;
};

/// Intersection over union. Zero when the union is empty.
double iou(const BBox& a, const BBox& b);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // population (divide by N)
};

/// Throws ContractError on an empty list.
MeanStd mean_std(std::span<const double> values);

/// Output token sequence. A naturally terminated sequence ends with exactly
/// one kEos; a sequence cut at the length cap carries no kEos and is treated
/// as ended.
struct TokenSequence {
  std::vector<TokenId> tokens;

  [[nodiscard]] bool terminated() const {
    return !tokens.empty() && tokens.back() == kEos;
  }
  /// Token count excluding the end-of-sequence token.
  [[nodiscard]] std::size_t content_length() const {
    return terminated() ? tokens.size() - 1 : tokens.size();
  }
  [[nodiscard]] std::span<const TokenId> content() const {
    return std::span<const TokenId>(tokens).first(content_length());
  }
  /// At most one kEos, only in final position, every id below vocab_size.
  [[nodiscard]] bool valid(std::size_t vocab_size) const;

  bool operator==(const TokenSequence&) const = default;
};

struct EmbeddingVector {
  std::vector<double> values;

  [[nodiscard]] std::size_t dim() const { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

double euclidean_distance(const EmbeddingVector& a, const EmbeddingVector& b);

/// Personal-grounding score. Precision and recall are micro-averaged over
/// distinct mentioned names; the macro fields average per-query ratios.
struct GroundingScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long long correct_mentions = 0;
  long long total_mentions = 0;
  long long total_gold = 0;
  // Occurrence counts before per-query deduplication.
  long long mention_occurrences = 0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  long long queries = 0;
  long long queries_without_mentions = 0;
  bool zero_mentions = false;
};

/// Fills precision/recall/f1 from the counts.
void finalize_counts(GroundingScore& score);

double f1_from(double precision, double recall);

// Deterministic seed derivation (splitmix64 finalizer over the parts).
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> parts);

// FNV-1a over bytes; used for config, vocab and checkpoint fingerprints.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t h = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

std::string to_lower(std::string_view s);

}  // namespace vrcap
