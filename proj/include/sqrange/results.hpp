#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "sqrange/geometry.hpp"

namespace sqrange {

/// Smallest anchored square holding c points. `points` is sorted by
/// (d_inf from the anchor, id); `defining_point` is the last of them.
struct SquareWithPoints {
  Coord side = 0;
  std::vector<Point> points;
  Point defining_point;
};

/// Fewer than c points lie in the anchored quadrant.
struct InsufficientPoints {};

using AnchoredSquareResult = std::variant<SquareWithPoints, InsufficientPoints>;

/// The range holds more than c points.
struct MoreThanC {};

using SparseReportResult = std::variant<std::vector<Point>, MoreThanC>;

struct ClosestPair {
  Point first;
  Point second;
  SquaredDistance distance_sq = 0;
};

/// Empty when the range holds fewer than two points.
using ClosestPairAnswer = std::optional<ClosestPair>;

inline bool is_insufficient(const AnchoredSquareResult& r) {
  return std::holds_alternative<InsufficientPoints>(r);
}
inline bool is_more_than_c(const SparseReportResult& r) {
  return std::holds_alternative<MoreThanC>(r);
}

}  // namespace sqrange
