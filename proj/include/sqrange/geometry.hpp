#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sqrange {

using Coord = std::int64_t;
using PointId = std::uint32_t;
// Squared Euclidean distances need the full 128-bit range once coordinates
// approach 2^60.
using SquaredDistance = __int128;

inline constexpr Coord kNegInf = std::numeric_limits<Coord>::min();
inline constexpr Coord kPosInf = std::numeric_limits<Coord>::max();

struct Point {
  Coord x = 0;
  Coord y = 0;
  PointId id = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

template <class W>
struct WeightedPoint {
  Point point;
  W weight{};
};

/// Closed axis-parallel rectangle [ax, bx] x [ay, by]. Degenerate (zero
/// width) rectangles are allowed.
struct Rect {
  Coord ax = 0, ay = 0, bx = 0, by = 0;

  bool contains(const Point& p) const {
    return ax <= p.x && p.x <= bx && ay <= p.y && p.y <= by;
  }
  bool empty() const { return ax > bx || ay > by; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Closed axis-parallel square with bottom-left corner (ax, ay) and side > 0.
class Square {
 public:
  Square() = default;
  Square(Coord ax, Coord ay, Coord side) : ax_(ax), ay_(ay), side_(side) {
    if (side <= 0) throw std::invalid_argument("square side must be positive");
  }
  static Square from_corners(Coord ax, Coord ay, Coord bx, Coord by) {
    if (bx - ax != by - ay) throw std::invalid_argument("corners do not span a square");
    return Square(ax, ay, bx - ax);
  }

  Coord ax() const { return ax_; }
  Coord ay() const { return ay_; }
  Coord bx() const { return ax_ + side_; }
  Coord by() const { return ay_ + side_; }
  Coord side() const { return side_; }

  Rect rect() const { return {ax_, ay_, bx(), by()}; }
  bool contains(const Point& p) const { return rect().contains(p); }

  friend bool operator==(const Square&, const Square&) = default;

 private:
  Coord ax_ = 0, ay_ = 0, side_ = 1;
};

/// The corner of a query square that a quadrant query is anchored at.
enum class Orientation { kBottomLeft, kBottomRight, kTopRight, kTopLeft };

inline constexpr std::array<Orientation, 4> kAllOrientations = {
    Orientation::kBottomLeft, Orientation::kBottomRight, Orientation::kTopRight,
    Orientation::kTopLeft};

inline const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::kBottomLeft: return "bottom-left";
    case Orientation::kBottomRight: return "bottom-right";
    case Orientation::kTopRight: return "top-right";
    case Orientation::kTopLeft: return "top-left";
  }
  return "?";
}

inline std::optional<Orientation> parse_orientation(std::string_view s) {
  for (auto o : kAllOrientations)
    if (s == to_string(o)) return o;
  return std::nullopt;
}

inline Coord abs_diff(Coord a, Coord b) { return a > b ? a - b : b - a; }

inline Coord d1(const Point& p, const Point& q) { return abs_diff(p.x, q.x) + abs_diff(p.y, q.y); }

inline Coord d_inf(const Point& p, const Point& q) {
  return std::max(abs_diff(p.x, q.x), abs_diff(p.y, q.y));
}

inline SquaredDistance d_euclid_sq(const Point& p, const Point& q) {
  const SquaredDistance dx = static_cast<SquaredDistance>(p.x) - q.x;
  const SquaredDistance dy = static_cast<SquaredDistance>(p.y) - q.y;
  return dx * dx + dy * dy;
}

/// (x, y) -> (x, y - x). Maps the NNE cone of p onto the NE quadrant of T(p).
inline Point shear(const Point& q) { return {q.x, q.y - q.x, q.id}; }
inline Point unshear(const Point& q) { return {q.x, q.y + q.x, q.id}; }

inline Point swap_xy(const Point& q) { return {q.y, q.x, q.id}; }

/// Maps the o-anchored quadrant problem onto the bottom-left (NE quadrant)
/// one. Involution.
inline Point reflect(const Point& p, Orientation o) {
  switch (o) {
    case Orientation::kBottomLeft: return p;
    case Orientation::kBottomRight: return {-p.x, p.y, p.id};
    case Orientation::kTopRight: return {-p.x, -p.y, p.id};
    case Orientation::kTopLeft: return {p.x, -p.y, p.id};
  }
  return p;
}

/// Closed quadrants Q1 (NE) .. Q4 (SE) around center.
inline bool in_quadrant(const Point& center, const Point& q, int k) {
  switch (k) {
    case 1: return q.x >= center.x && q.y >= center.y;
    case 2: return q.x <= center.x && q.y >= center.y;
    case 3: return q.x <= center.x && q.y <= center.y;
    case 4: return q.x >= center.x && q.y <= center.y;
  }
  throw std::invalid_argument("quadrant index must be in 1..4");
}

inline bool in_ne(const Point& center, const Point& q) { return in_quadrant(center, q, 1); }
inline bool in_sw(const Point& center, const Point& q) { return in_quadrant(center, q, 3); }

/// Quadrant index k such that reflect(., o) maps Q_k onto Q_1.
inline int quadrant_of(Orientation o) {
  switch (o) {
    case Orientation::kBottomLeft: return 1;
    case Orientation::kBottomRight: return 2;
    case Orientation::kTopRight: return 3;
    case Orientation::kTopLeft: return 4;
  }
  return 1;
}

inline Orientation orientation_of_quadrant(int k) {
  switch (k) {
    case 1: return Orientation::kBottomLeft;
    case 2: return Orientation::kBottomRight;
    case 3: return Orientation::kTopRight;
    case 4: return Orientation::kTopLeft;
  }
  throw std::invalid_argument("quadrant index must be in 1..4");
}

enum class Cone { kNNE, kENE };

// The slope-1 boundary ray belongs to both cones.
inline bool in_cone(const Point& center, const Point& q, Cone cone) {
  if (!in_ne(center, q)) return false;
  const Coord dx = q.x - center.x;
  const Coord dy = q.y - center.y;
  return cone == Cone::kNNE ? dy >= dx : dy <= dx;
}

enum class PositionViolation { kVertical, kHorizontal, kSlopeMinusOne, kSlopePlusOne };

inline const char* to_string(PositionViolation v) {
  switch (v) {
    case PositionViolation::kVertical: return "shared vertical line";
    case PositionViolation::kHorizontal: return "shared horizontal line";
    case PositionViolation::kSlopeMinusOne: return "shared slope -1 line";
    case PositionViolation::kSlopePlusOne: return "shared slope +1 line";
  }
  return "?";
}

struct GeneralPositionReport {
  Point first;
  Point second;
  PositionViolation violation;
};

class GeneralPositionError : public std::invalid_argument {
 public:
  explicit GeneralPositionError(const GeneralPositionReport& r)
      : std::invalid_argument(describe(r)), report_(r) {}
  const GeneralPositionReport& report() const { return report_; }

 private:
  static std::string describe(const GeneralPositionReport& r) {
    return "points " + std::to_string(r.first.id) + " and " + std::to_string(r.second.id) +
           " violate general position: " + to_string(r.violation);
  }
  GeneralPositionReport report_;
};

namespace detail {

template <class Key>
std::optional<GeneralPositionReport> find_shared(std::span<const Point> s, Key key,
                                                 PositionViolation what) {
  std::vector<std::pair<Coord, std::size_t>> keyed;
  keyed.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) keyed.emplace_back(key(s[i]), i);
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    if (keyed[i].first == keyed[i - 1].first) {
      auto a = keyed[i - 1].second, b = keyed[i].second;
      if (a > b) std::swap(a, b);
      return GeneralPositionReport{s[a], s[b], what};
    }
  }
  return std::nullopt;
}

inline std::optional<GeneralPositionReport> check_position(std::span<const Point> s,
                                                           bool slope_plus_one) {
  if (auto r = find_shared(s, [](const Point& p) { return p.x; }, PositionViolation::kVertical))
    return r;
  if (auto r = find_shared(s, [](const Point& p) { return p.y; }, PositionViolation::kHorizontal))
    return r;
  if (auto r = find_shared(s, [](const Point& p) { return p.x + p.y; },
                           PositionViolation::kSlopeMinusOne))
    return r;
  if (slope_plus_one)
    return find_shared(s, [](const Point& p) { return p.x - p.y; },
                       PositionViolation::kSlopePlusOne);
  return std::nullopt;
}

}  // namespace detail

/// No two points on a common vertical, horizontal or slope -1 line.
inline std::optional<GeneralPositionReport> validate_general_position(std::span<const Point> s) {
  return detail::check_position(s, false);
}

/// Additionally no two points on a common slope +1 line. Required wherever
/// the shear or an x/y reflection is applied before building a staircase.
inline std::optional<GeneralPositionReport> validate_cone_general_position(
    std::span<const Point> s) {
  return detail::check_position(s, true);
}

inline void require_distinct_ids(std::span<const Point> s) {
  std::vector<PointId> ids;
  ids.reserve(s.size());
  for (const auto& p : s) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw std::invalid_argument("point ids must be unique");
}

inline void require_coordinate_bound(std::span<const Point> s, Coord bound) {
  for (const auto& p : s)
    if (p.x > bound || p.x < -bound || p.y > bound || p.y < -bound)
      throw std::out_of_range("point " + std::to_string(p.id) + " exceeds coordinate bound");
}

inline std::string to_string(SquaredDistance v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

/// floor(sqrt(v)) for v >= 0.
inline SquaredDistance isqrt(SquaredDistance v) {
  if (v < 0) throw std::domain_error("isqrt of negative value");
  if (v < 2) return v;
  auto r = static_cast<SquaredDistance>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace sqrange
