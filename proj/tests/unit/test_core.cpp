#include <doctest.h>

#include <cmath>
#include <random>

#include "vrcap/core.hpp"

using namespace vrcap;

namespace {

// Cell-counting IoU: enumerate grid cells, no interval arithmetic.
double iou_by_cells(const BBox& a, const BBox& b) {
  long long inter = 0, uni = 0;
  const int lo = std::min({a.x1, a.y1, b.x1, b.y1});
  const int hi = std::max({a.x2, a.y2, b.x2, b.y2});
  for (int y = lo; y < hi; ++y)
    for (int x = lo; x < hi; ++x) {
      const bool ia = x >= a.x1 && x < a.x2 && y >= a.y1 && y < a.y2;
      const bool ib = x >= b.x1 && x < b.x2 && y >= b.y1 && y < b.y2;
      inter += ia && ib;
      uni += ia || ib;
    }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

BBox random_box(std::mt19937_64& rng, int w) {
  std::uniform_int_distribution<int> c(0, w);
  int x1 = c(rng), x2 = c(rng), y1 = c(rng), y2 = c(rng);
  if (x1 > x2) std::swap(x1, x2);
  if (y1 > y2) std::swap(y1, y2);
  return {x1, y1, x2, y2};
}

}  // namespace

TEST_CASE("iou examples") {
  CHECK(iou({0, 0, 10, 10}, {0, 0, 10, 10}) == 1.0);
  CHECK(iou({0, 0, 10, 10}, {5, 5, 15, 15}) == doctest::Approx(25.0 / 175.0).epsilon(1e-12));
  CHECK(iou({0, 0, 2, 4}, {0, 0, 2, 2}) == 0.5);
  // degenerate boxes have an empty union
  CHECK(iou({3, 3, 3, 3}, {3, 3, 3, 3}) == 0.0);
  CHECK(iou({0, 0, 0, 5}, {0, 0, 4, 4}) == 0.0);
}

TEST_CASE("iou agrees with cell counting, is symmetric and translation invariant") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> shift(-5, 5);
  for (int i = 0; i < 3000; ++i) {
    const BBox a = random_box(rng, 12), b = random_box(rng, 12);
    const double v = iou(a, b);
    CHECK(v == doctest::Approx(iou_by_cells(a, b)).epsilon(1e-12));
    CHECK(v == iou(b, a));
    const int dx = shift(rng), dy = shift(rng);
    CHECK(iou(a.shifted(dx, dy), b.shifted(dx, dy)) == doctest::Approx(v).epsilon(1e-12));
    if (a.area() > 0) CHECK(iou(a, a) == 1.0);
  }
}

TEST_CASE("bbox area and bounds") {
  const BBox b{1, 2, 4, 7};
  CHECK(b.area() == 15);
  CHECK(b.within(4, 7));
  CHECK_FALSE(b.within(3, 7));
  CHECK_FALSE(BBox{5, 0, 4, 1}.ordered());
}

TEST_CASE("mean_std examples") {
  const std::vector<double> a{1, 1, 0, 0}, b{1, 1, 1, 1}, c{0};
  CHECK(mean_std(a).mean == 0.5);
  CHECK(mean_std(a).stddev == 0.5);
  CHECK(mean_std(b).mean == 1.0);
  CHECK(mean_std(b).stddev == 0.0);
  CHECK(mean_std(c).mean == 0.0);
  CHECK(mean_std(c).stddev == 0.0);
  CHECK_THROWS_AS(mean_std(std::vector<double>{}), ContractError);
}

TEST_CASE("mean_std matches a two-pass computation") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> len(1, 64);
  std::normal_distribution<double> val(3.0, 7.0);
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> v(static_cast<std::size_t>(len(rng)));
    for (auto& x : v) x = val(rng);
    double m = 0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    s = std::sqrt(s / static_cast<double>(v.size()));
    const auto r = mean_std(v);
    CHECK(std::abs(r.mean - m) < 1e-12);
    CHECK(std::abs(r.stddev - s) < 1e-12);
  }
}

TEST_CASE("token sequence validity") {
  CHECK(TokenSequence{{5, 7, kEos}}.valid(10));
  CHECK(TokenSequence{{5, 7}}.valid(10));  // capped, no end token
  CHECK_FALSE(TokenSequence{{kEos, 5, kEos}}.valid(10));
  CHECK_FALSE(TokenSequence{{12, kEos}}.valid(10));
  CHECK(TokenSequence{{5, 7, kEos}}.content_length() == 2);
  CHECK(TokenSequence{{5, 7}}.content_length() == 2);
}

TEST_CASE("f1 and count finalization") {
  CHECK(f1_from(0.0, 0.0) == 0.0);
  CHECK(f1_from(1.0, 0.5) == doctest::Approx(2.0 / 3.0));
  GroundingScore g;
  g.total_gold = 4;
  finalize_counts(g);
  CHECK(g.precision == 0.0);
  CHECK(g.zero_mentions);
  g.correct_mentions = 2;
  g.total_mentions = 3;
  finalize_counts(g);
  CHECK(g.precision == doctest::Approx(2.0 / 3.0));
  CHECK(g.recall == 0.5);
  CHECK(g.f1 == doctest::Approx(2 * (2.0 / 3) * 0.5 / (2.0 / 3 + 0.5)));
  CHECK_FALSE(g.zero_mentions);
}

TEST_CASE("seed derivation is stable and spreads") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(255) == "00000000000000ff");
}
