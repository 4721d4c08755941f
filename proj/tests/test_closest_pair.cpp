#include <gtest/gtest.h>

#include "sqrange/closest_pair.hpp"
#include "sqrange/oracle.hpp"
#include "sqrange/random.hpp"

using namespace sqrange;

namespace {

Square random_square(DeterministicRng& rng, Coord range) {
  const Coord side = 1 + static_cast<Coord>(rng.below(static_cast<std::uint64_t>(range)));
  return Square(rng.between(-range / 4, range), rng.between(-range / 4, range), side);
}

void expect_same_distance(const ClosestPairAnswer& got, const ClosestPairAnswer& want,
                          const Square& r) {
  ASSERT_EQ(got.has_value(), want.has_value());
  if (!want) return;
  EXPECT_EQ(got->distance_sq, want->distance_sq);
  EXPECT_EQ(d_euclid_sq(got->first, got->second), got->distance_sq);
  EXPECT_TRUE(r.contains(got->first));
  EXPECT_TRUE(r.contains(got->second));
  EXPECT_NE(got->first.id, got->second.id);
}

}  // namespace

TEST(YaoWeights, Examples) {
  std::vector<Point> one{{0, 0, 0}};
  for (int k = 1; k <= 4; ++k) EXPECT_TRUE(compute_yao_weights(one, k).empty());

  std::vector<Point> two{{0, 0, 0}, {3, 4, 1}};
  const auto q1 = compute_yao_weights(two, 1);
  ASSERT_EQ(q1.size(), 1u);
  EXPECT_EQ(q1[0].point.id, 0u);
  EXPECT_EQ(q1[0].neighbor.id, 1u);
  EXPECT_EQ(q1[0].weight_sq, 25);
  const auto q3 = compute_yao_weights(two, 3);
  ASSERT_EQ(q3.size(), 1u);
  EXPECT_EQ(q3[0].point.id, 1u);
  EXPECT_TRUE(compute_yao_weights(two, 2).empty());
}

TEST(YaoWeights, MatchOracle) {
  DeterministicRng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = rng.below(200);
    const auto pts = random_general_position(n, 4 * static_cast<Coord>(n) + 1000, rng);
    for (int k = 1; k <= 4; ++k) {
      const auto got = compute_yao_weights(pts, k);
      const auto want = oracle::brute_yao_weights(pts, k);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].point.id, want[i].point.id);
        EXPECT_EQ(got[i].weight_sq, want[i].weight);
        EXPECT_TRUE(in_quadrant(got[i].point, got[i].neighbor, k));
        EXPECT_EQ(d_euclid_sq(got[i].point, got[i].neighbor), got[i].weight_sq);
      }
    }
  }
}

TEST(Partition, UnionIdentities) {
  for (auto [side, delta] : std::vector<std::pair<Coord, Coord>>{{4, 1}, {4, 2}, {10, 3}, {7, 3}, {2, 1}}) {
    const Square r(-3, 5, side);
    const auto part = partition_square(r, delta);
    for (const auto& c : part.c) {
      EXPECT_EQ(c.bx - c.ax, delta);
      EXPECT_EQ(c.by - c.ay, delta);
    }
    for (const auto& b : part.b) {
      EXPECT_EQ(b.bx - b.ax, side - delta);
      EXPECT_EQ(b.by - b.ay, side - delta);
    }
    Coord area = 0;
    for (const auto& c : part.c) area += (c.bx - c.ax) * (c.by - c.ay);
    for (const auto& a : part.a) area += (a.bx - a.ax) * (a.by - a.ay);
    EXPECT_EQ(area, side * side);

    const std::array<std::array<std::pair<char, int>, 4>, 4> unions{{
        {{{'C', 3}, {'A', 2}, {'A', 3}, {'A', 5}}},
        {{{'C', 4}, {'A', 3}, {'A', 4}, {'A', 5}}},
        {{{'C', 1}, {'A', 1}, {'A', 3}, {'A', 4}}},
        {{{'C', 2}, {'A', 1}, {'A', 2}, {'A', 3}}},
    }};
    // Point-set equality on a half-unit lattice (pieces share boundaries).
    for (std::size_t k = 0; k < 4; ++k) {
      for (Coord x2 = 2 * r.ax() - 2; x2 <= 2 * r.bx() + 2; ++x2)
        for (Coord y2 = 2 * r.ay() - 2; y2 <= 2 * r.by() + 2; ++y2) {
          auto in = [&](const Rect& q) {
            return 2 * q.ax <= x2 && x2 <= 2 * q.bx && 2 * q.ay <= y2 && y2 <= 2 * q.by;
          };
          bool any = false;
          for (auto [kind, i] : unions[k])
            any |= in(kind == 'C' ? part.c[static_cast<std::size_t>(i - 1)]
                                  : part.a[static_cast<std::size_t>(i - 1)]);
          EXPECT_EQ(in(part.b[k]), any) << "B" << k + 1;
        }
    }
  }
  EXPECT_THROW(partition_square(Square(0, 0, 4), 3), std::invalid_argument);
  EXPECT_THROW(partition_square(Square(0, 0, 4), 0), std::invalid_argument);
}

TEST(ClosestPair, TinySets) {
  ClosestPairIndex<> none(std::vector<Point>{});
  EXPECT_FALSE(none.query(Square(0, 0, 10)));
  ClosestPairIndex<> one({{1, 2, 0}});
  EXPECT_FALSE(one.query(Square(0, 0, 10)));
  ClosestPairIndex<> two({{1, 2, 0}, {4, 6, 1}});
  const auto a = two.query(Square(0, 0, 10));
  ASSERT_TRUE(a);
  EXPECT_EQ(a->distance_sq, 25);
  EXPECT_FALSE(two.query(Square(0, 0, 3)));
}

TEST(ClosestPair, MatchesOracle) {
  DeterministicRng rng(6);
  int dense = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(199);
    const Coord range = trial % 3 == 0 ? 4 * static_cast<Coord>(n) + 50 : Coord{1} << 30;
    const auto pts = random_general_position(n, range, rng);
    ClosestPairIndex<> index(pts);
    for (int t = 0; t < 300; ++t) {
      const auto r = random_square(rng, range);
      RcpQueryStats stats;
      const auto got = index.query(r, &stats);
      if (stats.path == RcpQueryStats::Path::kPartition) {
        ++dense;
        EXPECT_GT(stats.delta_times_two, 0);
        EXPECT_LE(stats.delta_times_two, r.side());
      }
      expect_same_distance(got, oracle::brute_closest_pair_in_range(pts, r), r);
    }
  }
  EXPECT_GT(dense, 1000);
}

TEST(ClosestPair, ScanBackendAgrees) {
  const auto pts = random_general_position(150, 3000, 9);
  ClosestPairIndex<ScanRmw> slow(pts);
  ClosestPairIndex<> fast(pts);
  ScanClosestPair scan(pts);
  DeterministicRng rng(10);
  for (int t = 0; t < 500; ++t) {
    const auto r = random_square(rng, 3000);
    const auto want = scan.query(r);
    expect_same_distance(slow.query(r), want, r);
    expect_same_distance(fast.query(r), want, r);
  }
}

TEST(ClosestPair, CornerTiesAreHandled) {
  // Dense lattice-like sets make d_inf ties at query corners common.
  DeterministicRng rng(12);
  int overflows = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = random_general_position(120, 260, rng);
    ClosestPairIndex<> index(pts);
    for (int t = 0; t < 400; ++t) {
      const auto r = random_square(rng, 260);
      RcpQueryStats stats;
      expect_same_distance(index.query(r, &stats), oracle::brute_closest_pair_in_range(pts, r), r);
      overflows += stats.corner_overflows;
    }
  }
  RecordProperty("corner_overflows", overflows);
  EXPECT_GT(overflows, 0);
}

TEST(ClosestPair, RejectsBadInput) {
  EXPECT_THROW(ClosestPairIndex<>({{0, 0, 0}, {1, 1, 1}}), GeneralPositionError);
  EXPECT_THROW(ClosestPairIndex<>({{kClosestPairCoordLimit + 1, 0, 0}}), std::out_of_range);
}
