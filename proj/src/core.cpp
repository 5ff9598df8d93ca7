#include "vrcap/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace vrcap {

double iou(const BBox& a, const BBox& b) {
  const long long ix =
      std::max(0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
  const long long iy =
      std::max(0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
  const long long inter = ix * iy;
  const long long uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) throw ContractError("mean_std: empty list");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / n)};
}

bool TokenSequence::valid(std::size_t vocab_size) const {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const TokenId t = tokens[i];
    if (t < 0 || static_cast<std::size_t>(t) >= vocab_size) return false;
    if (t == kEos && i + 1 != tokens.size()) return false;
  }
  return true;
}

double euclidean_distance(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim())
    throw ContractError("euclidean_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a.values[i] - b.values[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double f1_from(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

void finalize_counts(GroundingScore& score) {
  score.zero_mentions = score.total_mentions == 0;
  score.precision =
      score.total_mentions > 0
          ? static_cast<double>(score.correct_mentions) / score.total_mentions
          : 0.0;
  score.recall = score.total_gold > 0 ? static_cast<double>(
                                            score.correct_mentions) /
                                            score.total_gold
                                      : 0.0;
  score.f1 = f1_from(score.precision, score.recall);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(base);
  for (std::uint64_t p : parts) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace vrcap
