#include <gtest/gtest.h>

#include "sqrange/geometry.hpp"
#include "sqrange/random.hpp"

using namespace sqrange;

TEST(Distances, Manhattan) {
  EXPECT_EQ(d1({0, 0}, {0, 0}), 0);
  EXPECT_EQ(d1({1, 2}, {4, 3}), 4);
  const Point p{-3, 7}, q{5, 11};
  EXPECT_EQ(d1(p, q), (q.x + q.y) - (p.x + p.y));
}

TEST(Distances, Chebyshev) {
  EXPECT_EQ(d_inf({0, 0}, {0, 0}), 0);
  EXPECT_EQ(d_inf({1, 2}, {4, 3}), 3);
  EXPECT_EQ(d_inf({0, 0}, {2, 5}), 5);
}

TEST(Distances, EuclideanSquared) {
  EXPECT_EQ(d_euclid_sq({0, 0}, {0, 0}), 0);
  EXPECT_EQ(d_euclid_sq({0, 0}, {3, 4}), 25);
  EXPECT_EQ(d_euclid_sq({1, 1}, {2, 2}), 2);
  const Coord big = Coord{1} << 61;
  EXPECT_EQ(d_euclid_sq({-big, -big}, {big, big}), SquaredDistance{8} * big * big);
}

TEST(Distances, SymmetricAndNonnegative) {
  DeterministicRng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Point p{rng.between(-1000, 1000), rng.between(-1000, 1000)};
    const Point q{rng.between(-1000, 1000), rng.between(-1000, 1000)};
    EXPECT_EQ(d1(p, q), d1(q, p));
    EXPECT_EQ(d_inf(p, q), d_inf(q, p));
    EXPECT_EQ(d_euclid_sq(p, q), d_euclid_sq(q, p));
    EXPECT_GE(d_inf(p, q), 0);
    EXPECT_EQ(d1(p, q) == 0, p.x == q.x && p.y == q.y);
  }
}

TEST(Shear, Examples) {
  EXPECT_EQ(shear({0, 0}), (Point{0, 0}));
  EXPECT_EQ(shear({3, 5}), (Point{3, 2}));
  const Point p{0, 0}, q{1, 3};
  ASSERT_TRUE(in_cone(p, q, Cone::kNNE));
  EXPECT_EQ(d1(shear(p), shear(q)), q.y - p.y);
}

TEST(Shear, ConeCorrespondence) {
  DeterministicRng rng(11);
  for (int i = 0; i < 5000; ++i) {
    const Point p{rng.between(-50, 50), rng.between(-50, 50), 1};
    const Point q{rng.between(-50, 50), rng.between(-50, 50), 2};
    EXPECT_EQ(unshear(shear(q)), q);
    EXPECT_EQ(shear(q).x, q.x);
    EXPECT_EQ(in_cone(p, q, Cone::kNNE), in_ne(shear(p), shear(q)));
    EXPECT_EQ(in_cone(p, q, Cone::kENE), in_ne(shear(swap_xy(p)), shear(swap_xy(q))));
    EXPECT_EQ(in_ne(p, q), in_cone(p, q, Cone::kNNE) || in_cone(p, q, Cone::kENE));
  }
}

TEST(Reflect, Examples) {
  EXPECT_EQ(reflect({2, 3}, Orientation::kBottomLeft), (Point{2, 3}));
  EXPECT_EQ(reflect({2, 3}, Orientation::kTopRight), (Point{-2, -3}));
  EXPECT_EQ(reflect({2, 3}, Orientation::kBottomRight), (Point{-2, 3}));
  EXPECT_EQ(reflect({2, 3}, Orientation::kTopLeft), (Point{2, -3}));
}

TEST(Reflect, InvolutionAndQuadrants) {
  DeterministicRng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const Point p{rng.between(-20, 20), rng.between(-20, 20)};
    const Point q{rng.between(-20, 20), rng.between(-20, 20)};
    for (auto o : kAllOrientations) {
      EXPECT_EQ(reflect(reflect(q, o), o), q);
      EXPECT_EQ(in_quadrant(p, q, quadrant_of(o)), in_ne(reflect(p, o), reflect(q, o)));
      EXPECT_EQ(orientation_of_quadrant(quadrant_of(o)), o);
    }
  }
}

TEST(Quadrants, Examples) {
  EXPECT_TRUE(in_quadrant({0, 0}, {0, 0}, 1));
  EXPECT_FALSE(in_quadrant({0, 0}, {1, -1}, 1));
  EXPECT_TRUE(in_quadrant({0, 0}, {-2, 1}, 2));
  EXPECT_TRUE(in_sw({0, 0}, {-1, -1}));
  EXPECT_THROW(in_quadrant({0, 0}, {0, 0}, 5), std::invalid_argument);
}

TEST(Cones, Examples) {
  EXPECT_TRUE(in_cone({0, 0}, {1, 1}, Cone::kNNE));
  EXPECT_TRUE(in_cone({0, 0}, {1, 1}, Cone::kENE));
  EXPECT_TRUE(in_cone({0, 0}, {1, 3}, Cone::kNNE));
  EXPECT_FALSE(in_cone({0, 0}, {1, 3}, Cone::kENE));
  EXPECT_FALSE(in_cone({0, 0}, {-1, 3}, Cone::kNNE));
  EXPECT_FALSE(in_cone({0, 0}, {-1, 3}, Cone::kENE));
}

TEST(GeneralPosition, Examples) {
  std::vector<Point> ok{{0, 0, 0}, {1, 2, 1}};
  EXPECT_FALSE(validate_general_position(ok));

  std::vector<Point> vertical{{0, 0, 0}, {0, 5, 1}};
  auto r = validate_general_position(vertical);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->violation, PositionViolation::kVertical);
  EXPECT_EQ(r->first.id, 0u);
  EXPECT_EQ(r->second.id, 1u);

  std::vector<Point> anti{{0, 3, 0}, {3, 0, 1}};
  r = validate_general_position(anti);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->violation, PositionViolation::kSlopeMinusOne);

  std::vector<Point> horizontal{{0, 4, 0}, {2, 4, 1}};
  EXPECT_EQ(validate_general_position(horizontal)->violation, PositionViolation::kHorizontal);

  std::vector<Point> diagonal{{0, 0, 0}, {2, 2, 1}};
  EXPECT_FALSE(validate_general_position(diagonal));
  EXPECT_EQ(validate_cone_general_position(diagonal)->violation, PositionViolation::kSlopePlusOne);
}

TEST(GeneralPosition, GeneratorSatisfiesValidator) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_general_position(300, 5000, seed);
    EXPECT_EQ(s.size(), 300u);
    EXPECT_FALSE(validate_cone_general_position(s));
  }
  EXPECT_TRUE(random_general_position(0, 10, 1).empty());
  EXPECT_THROW(random_general_position(11, 10, 1), std::invalid_argument);
}

TEST(GeneralPosition, GeneratorIsDeterministic) {
  EXPECT_EQ(random_general_position(100, 1000, 42), random_general_position(100, 1000, 42));
  EXPECT_NE(random_general_position(100, 1000, 42), random_general_position(100, 1000, 43));
}

TEST(SquareType, Corners) {
  const Square r(1, 2, 3);
  EXPECT_EQ(r.bx(), 4);
  EXPECT_EQ(r.by(), 5);
  EXPECT_TRUE(r.contains({4, 5}));
  EXPECT_TRUE(r.contains({1, 2}));
  EXPECT_FALSE(r.contains({0, 2}));
  EXPECT_THROW(Square(0, 0, 0), std::invalid_argument);
  EXPECT_THROW(Square::from_corners(0, 0, 2, 3), std::invalid_argument);
}

TEST(Integers, Isqrt) {
  EXPECT_EQ(isqrt(0), 0);
  EXPECT_EQ(isqrt(1), 1);
  EXPECT_EQ(isqrt(2), 1);
  EXPECT_EQ(isqrt(25), 5);
  const SquaredDistance big = SquaredDistance{1} << 120;
  EXPECT_EQ(isqrt(big), SquaredDistance{1} << 60);
  EXPECT_EQ(isqrt(big - 1), (SquaredDistance{1} << 60) - 1);
  EXPECT_EQ(to_string(SquaredDistance{-1234567}), "-1234567");
  EXPECT_EQ(to_string(big), "1329227995784915872903807060280344576");
}
