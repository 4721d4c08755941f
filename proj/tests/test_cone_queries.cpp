#include <gtest/gtest.h>

#include "sqrange/cone_queries.hpp"
#include "sqrange/oracle.hpp"
#include "sqrange/random.hpp"

using namespace sqrange;

namespace {

std::vector<PointId> sorted_ids(std::span<const Point> pts) {
  std::vector<PointId> ids;
  for (const auto& p : pts) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Point probe(DeterministicRng& rng, std::span<const Point> pts, Coord range) {
  Point q{rng.between(-range / 8, range + range / 8), rng.between(-range / 8, range + range / 8)};
  if (!pts.empty() && rng.below(4) == 0) {
    const auto& s = pts[rng.below(pts.size())];
    q = {s.x + rng.between(-1, 1), s.y + rng.between(-1, 1)};
  }
  return q;
}

void expect_same(const AnchoredSquareResult& got, const AnchoredSquareResult& want) {
  ASSERT_EQ(got.index(), want.index());
  if (is_insufficient(want)) return;
  const auto& g = std::get<SquareWithPoints>(got);
  const auto& w = std::get<SquareWithPoints>(want);
  EXPECT_EQ(g.side, w.side);
  EXPECT_EQ(sorted_ids(g.points), sorted_ids(w.points));
  EXPECT_EQ(g.defining_point.id, w.defining_point.id);
}

}  // namespace

TEST(AnchoredSquare, SinglePoint) {
  AnchoredSquareIndex index({{1, 1, 0}}, 1);
  auto r = index.smallest_square({0, 0});
  ASSERT_FALSE(is_insufficient(r));
  EXPECT_EQ(std::get<SquareWithPoints>(r).side, 1);
  EXPECT_EQ(std::get<SquareWithPoints>(r).points.size(), 1u);
  auto self = index.smallest_square({1, 1});
  ASSERT_FALSE(is_insufficient(self));
  EXPECT_EQ(std::get<SquareWithPoints>(self).side, 0);
  EXPECT_TRUE(is_insufficient(index.smallest_square({2, 2})));
}

TEST(AnchoredSquare, EmptyAndOversizedC) {
  AnchoredSquareIndex empty(std::vector<Point>{}, 3);
  EXPECT_TRUE(is_insufficient(empty.smallest_square({0, 0})));
  AnchoredSquareIndex small({{1, 1, 0}, {2, 5, 1}}, 3);
  EXPECT_TRUE(is_insufficient(small.smallest_square({0, 0})));
  EXPECT_THROW(AnchoredSquareIndex({{1, 1, 0}}, 0), std::invalid_argument);
  EXPECT_THROW(AnchoredSquareIndex({{0, 0, 0}, {2, 2, 1}}, 1), GeneralPositionError);
  EXPECT_THROW(AnchoredSquareIndex({{kConeCoordLimit + 1, 0, 0}}, 1), std::out_of_range);
}

TEST(AnchoredSquare, MatchesOracleAllOrientations) {
  DeterministicRng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.below(150);
    const Coord range = 4 * static_cast<Coord>(n) + static_cast<Coord>(rng.below(3000));
    const auto pts = random_general_position(n, range, rng);
    for (std::size_t c : {1u, 5u, 9u}) {
      for (auto o : kAllOrientations) {
        AnchoredSquareIndex index(pts, c, o);
        for (int t = 0; t < 100; ++t) {
          const Point p = probe(rng, pts, range);
          expect_same(index.smallest_square(p), oracle::brute_anchored_square(pts, p, c, o));
        }
      }
    }
  }
}

TEST(AnchoredSquare, OrientationsAgreeWithReflection) {
  const auto pts = random_general_position(80, 1000, 4);
  AnchoredSquareIndex base(pts, 4, Orientation::kBottomLeft);
  DeterministicRng rng(2);
  for (auto o : kAllOrientations) {
    std::vector<Point> mirrored;
    for (const auto& p : pts) mirrored.push_back(reflect(p, o));
    AnchoredSquareIndex turned(pts, 4, o);
    AnchoredSquareIndex plain(mirrored, 4, Orientation::kBottomLeft);
    for (int t = 0; t < 300; ++t) {
      const Point p = probe(rng, pts, 1000);
      expect_same(turned.smallest_square(p), plain.smallest_square(reflect(p, o)));
    }
  }
}

TEST(AnchoredSquare, SideGrowsWithC) {
  const auto pts = random_general_position(100, 2000, 12);
  std::vector<AnchoredSquareIndex> indexes;
  for (std::size_t c = 1; c <= 8; ++c) indexes.emplace_back(pts, c, Orientation::kTopLeft);
  DeterministicRng rng(3);
  for (int t = 0; t < 300; ++t) {
    const Point p = probe(rng, pts, 2000);
    Coord last = -1;
    bool ended = false;
    for (const auto& index : indexes) {
      const auto r = index.smallest_square(p);
      if (is_insufficient(r)) {
        ended = true;
        continue;
      }
      EXPECT_FALSE(ended);
      const Coord side = std::get<SquareWithPoints>(r).side;
      EXPECT_GE(side, last);
      last = side;
    }
  }
}

TEST(AnchoredSquare, ReturnedSquareHoldsExactlyItsPoints) {
  const auto pts = random_general_position(150, 100000, 21);
  DeterministicRng rng(5);
  for (auto o : kAllOrientations) {
    AnchoredSquareIndex index(pts, 5, o);
    for (int t = 0; t < 300; ++t) {
      const Point p = probe(rng, pts, 100000);
      const auto r = index.smallest_square(p);
      if (is_insufficient(r)) continue;
      const auto& sq = std::get<SquareWithPoints>(r);
      if (sq.side == 0) continue;
      const auto inside = oracle::brute_filter(pts, index.square_at(p, sq.side).rect());
      // More only under a d_inf tie at the boundary.
      EXPECT_GE(inside.size(), 5u);
      for (const auto& q : sq.points) EXPECT_TRUE(index.square_at(p, sq.side).contains(q));
    }
  }
}

TEST(SparseReport, Examples) {
  const auto pts = random_general_position(60, 500, 31);
  SparseReportIndex zero(pts, 0);
  DeterministicRng rng(8);
  for (int t = 0; t < 500; ++t) {
    const Square r(rng.between(-50, 500), rng.between(-50, 500), 1 + rng.between(0, 60));
    const auto got = zero.report(r);
    const auto count = oracle::brute_count_in_range(pts, r);
    EXPECT_EQ(is_more_than_c(got), count > 0);
    if (!is_more_than_c(got)) EXPECT_TRUE(std::get<std::vector<Point>>(got).empty());
  }

  SparseReportIndex one({{0, 0, 0}, {3, 1, 1}}, 1);
  EXPECT_TRUE(std::get<std::vector<Point>>(one.report(Square(10, 10, 5))).empty());
  EXPECT_EQ(std::get<std::vector<Point>>(one.report(Square(-1, -1, 2))).size(), 1u);
  EXPECT_TRUE(is_more_than_c(one.report(Square(0, 0, 3))));
}

TEST(SparseReport, MatchesOracle) {
  DeterministicRng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.below(150);
    const Coord range = 4 * static_cast<Coord>(n) + static_cast<Coord>(rng.below(3000));
    const auto pts = random_general_position(n, range, rng);
    for (std::size_t c : {0u, 1u, 5u, 9u}) {
      SparseReportIndex index(pts, c);
      for (int t = 0; t < 150; ++t) {
        const Point a = probe(rng, pts, range);
        const Square r(a.x, a.y, 1 + static_cast<Coord>(rng.below(static_cast<std::uint64_t>(range / 3 + 1))));
        const auto got = index.report(r);
        const auto want = oracle::brute_sparse_report(pts, r, c);
        ASSERT_EQ(is_more_than_c(got), is_more_than_c(want));
        if (!is_more_than_c(want))
          EXPECT_EQ(sorted_ids(std::get<std::vector<Point>>(got)),
                    sorted_ids(std::get<std::vector<Point>>(want)));
      }
    }
  }
}
