#include <gtest/gtest.h>

#include "sqrange/min_weight.hpp"
#include "sqrange/oracle.hpp"
#include "sqrange/random.hpp"

using namespace sqrange;

namespace {

std::vector<WeightedPoint<double>> weighted(std::span<const Point> pts, DeterministicRng& rng,
                                            bool ties) {
  std::vector<WeightedPoint<double>> out;
  for (const auto& p : pts)
    out.push_back({p, static_cast<double>(rng.below(ties ? 5 : 1000000)) / 8.0});
  return out;
}

Square random_square(DeterministicRng& rng, Coord range) {
  return Square(rng.between(-range / 4, range), rng.between(-range / 4, range),
                1 + static_cast<Coord>(rng.below(static_cast<std::uint64_t>(range))));
}

template <class Index>
void check_against_oracle(const Index& index, std::span<const WeightedPoint<double>> v, const Square& r) {
  const auto got = index.query(r);
  const auto want = oracle::brute_min_weight_in_range<double>(v, r);
  ASSERT_EQ(got.has_value(), want.has_value());
  if (!want) return;
  EXPECT_EQ(got->weight, want->weight);
  EXPECT_TRUE(r.contains(got->point));
}

}  // namespace

TEST(NormalizeWeights, Examples) {
  std::vector<WeightedPoint<double>> one{{{0, 0, 0}, 42.0}};
  EXPECT_EQ(normalize_weights<double>(one).rank_weight(0), (Rational{1, 2}));

  std::vector<WeightedPoint<double>> three{{{0, 0, 0}, 5.0}, {{1, 2, 1}, 2.0}, {{2, 5, 2}, 9.0}};
  const auto w = normalize_weights<double>(three);
  EXPECT_EQ(w.rank, (std::vector<std::size_t>{2, 1, 3}));
  EXPECT_EQ(w.rank_weight(1), (Rational{1, 6}));

  std::vector<WeightedPoint<double>> tied{{{0, 0, 1}, 1.0}, {{1, 2, 0}, 1.0}};
  EXPECT_EQ(normalize_weights<double>(tied).rank, (std::vector<std::size_t>{2, 1}));

  EXPECT_THROW(normalize_weights<double>(std::span<const WeightedPoint<double>>{}), std::invalid_argument);
}

TEST(DeltaHat, Examples) {
  std::vector<Point> pythagorean{{0, 0, 0}, {3, 4, 1}};
  EXPECT_EQ(compute_delta_hat(pythagorean), (Rational{5, 1}));

  std::vector<Point> diagonal{{0, 0, 0}, {1, 1, 1}};
  const auto d = compute_delta_hat(diagonal, 1000000);
  EXPECT_EQ(d, (Rational{1414213, 1000000}));
  EXPECT_LE(static_cast<SquaredDistance>(d.num) * d.num, SquaredDistance{2} * d.den * d.den);

  EXPECT_THROW(compute_delta_hat(std::vector<Point>{{0, 0, 0}}), std::invalid_argument);
}

TEST(DeltaHat, BoundsOnRandomSets) {
  DeterministicRng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto pts = random_general_position(2 + rng.below(100), 100000, rng);
    const auto d = oracle::brute_closest_pair(pts)->distance_sq;
    EXPECT_EQ(min_squared_distance(pts), d);
    const auto h = compute_delta_hat(pts);
    const SquaredDistance h2 = static_cast<SquaredDistance>(h.num) * h.num;
    EXPECT_GT(h.num, 0);
    EXPECT_LE(h2, d);
    EXPECT_GE(4 * h2, d);  // delta_hat >= delta / 2
  }
}

TEST(DoubledSet, Example) {
  // Point 0 has rank 2 of 2, so its normalized weight is 1/2; delta = 3.
  std::vector<WeightedPoint<double>> v{{{0, 0, 0}, 9.0}, {{0, 3, 1}, 1.0}};
  std::vector<Point> base{{0, 0, 0}, {0, 3, 1}};
  const auto set = build_doubled_set(base, normalize_weights<double>(v), compute_delta_hat(base));
  EXPECT_EQ(set.delta_hat, (Rational{3, 1}));
  ASSERT_EQ(set.points.size(), 6u);
  // p+ = (1/2, 0), p- = (-1/2, 0) in units of 1/scale.
  EXPECT_EQ(set.scale, 12);
  EXPECT_EQ(set.points[2], (Point{6, 0, 2}));
  EXPECT_EQ(set.points[4], (Point{-6, 0, 4}));
  for (std::size_t i = 0; i < 2; ++i) {
    // Offsets stay below delta_hat / 3.
    EXPECT_LT(9 * d_euclid_sq(set.points[i], set.points[2 + i]),
              static_cast<SquaredDistance>(set.scaled_delta_hat) * set.scaled_delta_hat);
  }
  EXPECT_THROW(build_doubled_set(base, normalize_weights<double>(v), Rational{4, 1}),
               std::invalid_argument);
}

TEST(TiltTransform, PutsDoubledSetInGeneralPosition) {
  DeterministicRng rng(5);
  const auto pts = random_general_position(40, 1000, rng);
  const auto v = weighted(pts, rng, true);
  const auto set = build_doubled_set(pts, normalize_weights<double>(v), compute_delta_hat(pts));
  EXPECT_TRUE(validate_general_position(set.points));  // satellites share y with their base
  Tilt tilt(set.points.size());
  std::vector<Point> tilted;
  for (std::size_t i = 0; i < set.points.size(); ++i) tilted.push_back(tilt.apply(set.points[i], i));
  EXPECT_FALSE(validate_cone_general_position(tilted));
  for (int t = 0; t < 500; ++t) {
    const auto r = random_square(rng, 1000 * set.scale);
    const auto tr = tilt.apply(r);
    for (std::size_t i = 0; i < set.points.size(); ++i)
      EXPECT_EQ(r.contains(set.points[i]), tr.contains(tilted[i]));
  }
}

TEST(MinWeight, TinySets) {
  MinWeightIndex<ScanClosestPair> empty(std::vector<WeightedPoint<double>>{});
  EXPECT_FALSE(empty.query(Square(0, 0, 10)));
  MinWeightIndex<ClosestPairIndex<>> one({{{2, 3, 7}, 4.5}});
  EXPECT_FALSE(one.query(Square(0, 0, 1)));
  const auto hit = one.query(Square(0, 0, 5));
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->point.id, 7u);
  EXPECT_EQ(hit->weight, 4.5);
}

TEST(MinWeight, ScanBackendMatchesOracle) {
  DeterministicRng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pts = random_general_position(2 + rng.below(99), 2000, rng);
    const auto v = weighted(pts, rng, trial % 2 == 0);
    MinWeightIndex<ScanClosestPair> index(v);
    EXPECT_EQ(index.doubled_set().points.size(), 3 * pts.size());
    for (int t = 0; t < 200; ++t) check_against_oracle(index, v, random_square(rng, 2000));
  }
}

TEST(MinWeight, RoundTripThroughClosestPairIndex) {
  DeterministicRng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pts = random_general_position(2 + rng.below(99), 100000, rng);
    const auto v = weighted(pts, rng, trial % 2 == 0);
    MinWeightIndex<ClosestPairIndex<>> index(v);
    for (int t = 0; t < 200; ++t) check_against_oracle(index, v, random_square(rng, 100000));
  }
}

TEST(MinWeight, HalvedDeltaHat) {
  DeterministicRng rng(9);
  const auto pts = random_general_position(60, 5000, rng);
  const auto v = weighted(pts, rng, false);
  const auto h = compute_delta_hat(pts);
  MinWeightIndex<ScanClosestPair> scan(v, Rational{h.num, 2 * h.den});
  MinWeightIndex<ClosestPairIndex<>> full(v, Rational{h.num, 2 * h.den});
  for (int t = 0; t < 300; ++t) {
    const auto r = random_square(rng, 5000);
    check_against_oracle(scan, v, r);
    check_against_oracle(full, v, r);
  }
}
