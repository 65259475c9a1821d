#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "landau/neighbor.hpp"
#include "support.hpp"

using namespace landau;

namespace {

std::vector<Index> brute(std::span<const Vec> pts, const Vec& x, double sigma, int d) {
  std::vector<Index> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += (x[a] - pts[i][a]) * (x[a] - pts[i][a]);
    if (r2 <= sigma * sigma) out.push_back(static_cast<Index>(i));
  }
  return out;
}

std::vector<Index> all_buckets(const CellList& cl) {
  std::vector<Index> all;
  // every non-empty bucket holds at least one point, so probing at the points finds them all
  std::set<std::array<std::int64_t, 3>> seen;
  for (const Vec& p : cl.points()) {
    auto c = cl.cell_of(p);
    if (!seen.insert(c).second) continue;
    const auto b = cl.bucket(c);
    all.insert(all.end(), b.begin(), b.end());
  }
  return all;
}

}  // namespace

TEST_SUITE("neighbor") {
  TEST_CASE("single point lives in a single bucket") {
    const std::vector<Vec> p{{0.3, -0.2, 0.0}};
    const CellList cl = build_cell_list(p, 2, 0.5);
    const auto b = cl.bucket(cl.cell_of(p[0]));
    REQUIRE(b.size() == 1);
    CHECK(b[0] == 0);
    CHECK(all_buckets(cl) == std::vector<Index>{0});
  }

  TEST_CASE("well separated points land in distinct buckets") {
    const double sigma = 0.2;
    const std::vector<Vec> p{{0.0, 0.0, 0.0}, {3.0 * sigma, 0.0, 0.0}};
    const CellList cl = build_cell_list(p, 2, sigma);
    CHECK(cl.cell_of(p[0]) != cl.cell_of(p[1]));
    CHECK(cl.cell_size() >= sigma);
  }

  TEST_CASE("buckets partition the indices") {
    for (int d : {2, 3})
      for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 50 + 37 * trial;
        const auto pts = testing::random_points(n, d, 7 + trial, 2.0);
        const CellList cl = build_cell_list(pts, d, 0.1 + 0.05 * trial);
        std::vector<Index> all = all_buckets(cl);
        REQUIRE(all.size() == n);
        std::sort(all.begin(), all.end());
        for (std::size_t i = 0; i < n; ++i) CHECK(all[i] == i);
      }
  }

  TEST_CASE("bucket contents are ascending") {
    const auto pts = testing::random_points(500, 2, 3, 1.0);
    const CellList cl = build_cell_list(pts, 2, 0.2);
    for (const Vec& p : pts) {
      const auto b = cl.bucket(cl.cell_of(p));
      CHECK(std::is_sorted(b.begin(), b.end()));
    }
  }

  TEST_CASE("query covering everything returns all indices") {
    const auto pts = testing::random_points(40, 3, 9, 1.0);
    const CellList cl = build_cell_list(pts, 3, 10.0);
    const auto q = query_within(cl, pts[5], 10.0);
    REQUIRE(q.size() == 40);
    for (std::size_t i = 0; i < 40; ++i) CHECK(q[i] == i);
  }

  TEST_CASE("query far outside the box is empty") {
    const auto pts = testing::random_points(40, 2, 9, 1.0);
    const CellList cl = build_cell_list(pts, 2, 0.3);
    CHECK(query_within(cl, {5.0, 5.0, 0.0}, 0.3).empty());
    CHECK(query_within(cl, {-1.0 - 0.31, 0.0, 0.0}, 0.3).size() <= 40);
  }

  TEST_CASE("queries equal the brute-force filter") {
    for (int d : {2, 3}) {
      const auto pts = testing::random_points(200, d, 21 + d, 1.0);
      const CellList cl = build_cell_list(pts, d, 0.3);
      const auto qs = testing::random_points(50, d, 99 + d, 1.4);
      for (const Vec& x : qs) CHECK(query_within(cl, x, 0.3) == brute(pts, x, 0.3, d));
    }
  }

  TEST_CASE("rebuilding gives identical answers") {
    const auto pts = testing::random_points(300, 3, 4, 1.0);
    const CellList a = build_cell_list(pts, 3, 0.25);
    const CellList b = build_cell_list(pts, 3, 0.25);
    for (const Vec& x : testing::random_points(30, 3, 8, 1.0))
      CHECK(query_within(a, x, 0.25) == query_within(b, x, 0.25));
  }

  TEST_CASE("distance exactly sigma is included") {
    const std::vector<Vec> p{{0.0, 0.0, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.75, 0.0}};
    const CellList cl = build_cell_list(p, 2, 0.5);
    CHECK(query_within(cl, {0.0, 0.0, 0.0}, 0.5) == std::vector<Index>{0, 1});
    CHECK(query_within(cl, {0.0, 0.25, 0.0}, 0.5) == std::vector<Index>{0, 2});
  }

  TEST_CASE("query radius must match the build radius") {
    const auto pts = testing::random_points(10, 2, 1, 1.0);
    const CellList cl = build_cell_list(pts, 2, 0.3);
    CHECK_THROWS_AS(query_within(cl, pts[0], 0.4), ConfigError);
    CHECK_THROWS_AS(build_pair_list(pts, cl, 0.2), ConfigError);
    CHECK_THROWS_AS(build_cell_list(pts, 2, 0.0), ConfigError);
    CHECK_THROWS_AS(build_cell_list(pts, 4, 0.1), ConfigError);
  }

  TEST_CASE("bucket array stays proportional to the point count") {
    // two far-apart points with a tiny radius would need ~1e12 cells
    const std::vector<Vec> p{{-1e3, -1e3, 0.0}, {1e3, 1e3, 0.0}};
    const CellList cl = build_cell_list(p, 2, 1e-3);
    CHECK(cl.cell_count() <= 64);
    CHECK(cl.cell_size() >= 1e-3);
    CHECK(query_within(cl, p[0], 1e-3) == std::vector<Index>{0});
  }

  TEST_CASE("pair lists equal brute force and transpose back") {
    for (int d : {2, 3})
      for (int trial = 0; trial < 10; ++trial) {
        const auto src = testing::random_points(150, d, 50 + trial, 1.0);
        const auto tgt = testing::random_points(80, d, 70 + trial, 1.2);
        const double sigma = 0.15 + 0.04 * trial;
        const CellList cl = build_cell_list(src, d, sigma);
        const PairList a = build_pair_list(tgt, cl, sigma);
        const PairList b = build_pair_list_brute(tgt, src, d, sigma);
        CHECK(a.offsets == b.offsets);
        CHECK(a.indices == b.indices);
        const PairList t = transpose(a, src.size());
        CHECK(t.target_count() == src.size());
        const PairList back = transpose(t, tgt.size());
        CHECK(back.offsets == a.offsets);
        CHECK(back.indices == a.indices);
        for (std::size_t s = 0; s < src.size(); ++s) {
          const auto nb = t.neighbors(s);
          CHECK(std::is_sorted(nb.begin(), nb.end()));
          CHECK(std::vector<Index>(nb.begin(), nb.end()) == brute(tgt, src[s], sigma, d));
        }
      }
  }
}
