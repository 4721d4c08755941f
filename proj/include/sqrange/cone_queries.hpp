#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "sqrange/geometry.hpp"
#include "sqrange/results.hpp"
#include "sqrange/staircase.hpp"

namespace sqrange {

/// Input bound for the cone layer: reflection plus shear doubles magnitudes.
inline constexpr Coord kConeCoordLimit = Coord{1} << 60;
/// Query anchors may range a little further than input points.
inline constexpr Coord kConeQueryLimit = Coord{1} << 61;

/// Smallest square anchored at a fixed corner holding c points.
///
/// The corner's quadrant is reflected onto NE and split by the slope 1 line
/// into two cones. After the shear (x, y) -> (x, y - x) the c lowest points of
/// the upper cone become the c d1-closest points of a NE quadrant, answered by
/// a staircase index; the lower cone is the same problem with x and y swapped.
class AnchoredSquareIndex {
 public:
  AnchoredSquareIndex() : AnchoredSquareIndex(std::vector<Point>{}, 1) {}

  AnchoredSquareIndex(std::vector<Point> points, std::size_t c,
                      Orientation orientation = Orientation::kBottomLeft)
      : c_(c), orientation_(orientation), points_(std::move(points)) {
    if (c < 1) throw std::invalid_argument("anchored square: c must be at least 1");
    require_coordinate_bound(points_, kConeCoordLimit);
    require_distinct_ids(points_);
    if (auto violation = validate_cone_general_position(points_))
      throw GeneralPositionError(*violation);

    const std::size_t inner_c = std::max<std::size_t>(1, std::min(c, points_.size()));
    std::vector<Point> upper, lower;
    upper.reserve(points_.size());
    lower.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      Point r = reflect(points_[i], orientation_);
      r.id = static_cast<PointId>(i);
      upper.push_back(shear(r));
      lower.push_back(shear(swap_xy(r)));
    }
    nne_ = StaircaseIndex(std::move(upper), inner_c);
    ene_ = StaircaseIndex(std::move(lower), inner_c);
  }

  std::size_t c() const { return c_; }
  Orientation orientation() const { return orientation_; }
  std::size_t size() const { return points_.size(); }
  const StaircaseIndex& upper_cone_index() const { return nne_; }
  const StaircaseIndex& lower_cone_index() const { return ene_; }

  /// Union of the c lowest upper-cone and c leftmost lower-cone points,
  /// sorted by (d_inf from p, id). Holds every point of the quadrant when it
  /// has fewer than c points.
  std::vector<Point> candidates(const Point& p) const {
    if (p.x > kConeQueryLimit || p.x < -kConeQueryLimit || p.y > kConeQueryLimit ||
        p.y < -kConeQueryLimit)
      throw std::out_of_range("query anchor exceeds coordinate bound");
    const Point r = reflect(p, orientation_);
    std::vector<PointId> hits;
    for (const auto& q : nne_.closest_c(shear(r))) hits.push_back(q.id);
    for (const auto& q : ene_.closest_c(shear(swap_xy(r)))) hits.push_back(q.id);
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());

    std::vector<Point> out;
    out.reserve(hits.size());
    for (auto i : hits) out.push_back(points_[i]);
    std::sort(out.begin(), out.end(), [&](const Point& a, const Point& b) {
      const Coord da = d_inf(p, a), db = d_inf(p, b);
      return da != db ? da < db : a.id < b.id;
    });
    return out;
  }

  /// Smallest square with this index's corner at p holding c points of S
  /// (closed membership; d_inf ties broken by id).
  AnchoredSquareResult smallest_square(const Point& p) const {
    auto pts = candidates(p);
    if (pts.size() < c_) return InsufficientPoints{};
    pts.resize(c_);
    const Point defining = pts.back();
    return SquareWithPoints{d_inf(p, defining), std::move(pts), defining};
  }

  /// The square as a range, given the side returned for anchor p.
  Square square_at(const Point& p, Coord side) const {
    switch (orientation_) {
      case Orientation::kBottomLeft: return Square(p.x, p.y, side);
      case Orientation::kBottomRight: return Square(p.x - side, p.y, side);
      case Orientation::kTopRight: return Square(p.x - side, p.y - side, side);
      case Orientation::kTopLeft: return Square(p.x, p.y - side, side);
    }
    return Square(p.x, p.y, side);
  }

  std::size_t memory_bytes() const {
    return points_.size() * sizeof(Point) + nne_.memory_bytes() + ene_.memory_bytes();
  }

 private:
  std::size_t c_;
  Orientation orientation_;
  std::vector<Point> points_;
  StaircaseIndex nne_;
  StaircaseIndex ene_;
};

/// Decides |R ∩ S| <= c for a query square R and reports R ∩ S if so.
class SparseReportIndex {
 public:
  SparseReportIndex() : SparseReportIndex(std::vector<Point>{}, 0) {}

  SparseReportIndex(std::vector<Point> points, std::size_t c)
      : c_(c), inner_(std::move(points), c + 1, Orientation::kBottomLeft) {}

  std::size_t c() const { return c_; }
  std::size_t size() const { return inner_.size(); }

  SparseReportResult report(const Square& r) const {
    const Point anchor{r.ax(), r.ay()};
    auto candidates = inner_.candidates(anchor);
    if (candidates.size() > c_) {
      // candidates[c] defines R': the smallest anchored square with c + 1 points.
      if (d_inf(anchor, candidates[c_]) <= r.side()) return MoreThanC{};
      candidates.resize(c_);
    }
    std::vector<Point> out;
    for (const auto& q : candidates)
      if (r.contains(q)) out.push_back(q);
    return out;
  }

  std::size_t memory_bytes() const { return inner_.memory_bytes(); }

 private:
  std::size_t c_;
  AnchoredSquareIndex inner_;
};

}  // namespace sqrange
