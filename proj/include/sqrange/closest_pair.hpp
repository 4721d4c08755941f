#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sqrange/cone_queries.hpp"
#include "sqrange/geometry.hpp"
#include "sqrange/results.hpp"
#include "sqrange/rmw_baseline.hpp"

namespace sqrange {

/// A range closest-pair backend over square queries.
template <class Index>
concept ClosestPairBackend = std::constructible_from<Index, std::vector<Point>> &&
                             requires(const Index& index, const Square& r) {
                               { index.query(r) } -> std::same_as<ClosestPairAnswer>;
                               { Index::requires_general_position } -> std::convertible_to<bool>;
                             };

/// Edge of the quadrant Yao graph: p's nearest neighbor inside Q_k(p).
struct YaoEdge {
  Point point;
  Point neighbor;
  SquaredDistance weight_sq = 0;
};

/// For every p with another point in the closed quadrant Q_k(p), its nearest
/// such neighbor. Output follows input order.
inline std::vector<YaoEdge> compute_yao_weights(std::span<const Point> s, int k) {
  const Orientation o = orientation_of_quadrant(k);
  std::vector<std::size_t> order(s.size());
  std::vector<Point> mirrored(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    order[i] = i;
    mirrored[i] = reflect(s[i], o);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Point& p = mirrored[a];
    const Point& q = mirrored[b];
    return p.x != q.x ? p.x < q.x : p.y < q.y;
  });

  std::vector<std::optional<YaoEdge>> found(s.size());
  for (std::size_t at = 0; at < order.size(); ++at) {
    const Point& p = mirrored[order[at]];
    std::optional<SquaredDistance> best;
    std::size_t best_index = 0;
    for (std::size_t next = at + 1; next < order.size(); ++next) {
      const Point& q = mirrored[order[next]];
      const SquaredDistance dx = static_cast<SquaredDistance>(q.x) - p.x;
      if (best && dx * dx >= *best) break;
      if (q.y < p.y) continue;
      const auto d = d_euclid_sq(p, q);
      if (!best || d < *best) {
        best = d;
        best_index = order[next];
      }
    }
    // Coincident points sorted before p are neighbors too.
    for (std::size_t prev = at; prev-- > 0;) {
      const Point& q = mirrored[order[prev]];
      if (q.x != p.x || q.y != p.y) break;
      if (!best || *best > 0) {
        best = 0;
        best_index = order[prev];
      }
    }
    if (best) found[order[at]] = YaoEdge{s[order[at]], s[best_index], *best};
  }
  std::vector<YaoEdge> out;
  for (auto& e : found)
    if (e) out.push_back(*e);
  return out;
}

/// The nine-piece partition of a square R with inner width delta, 0 < 2*delta <= side.
///
///   C2 | A1 | C1      corner squares C (side delta)
///   A2 | A3 | A4      border strips and center A
///   C3 | A5 | C4
///
/// B_k is the side (l - delta) square at one corner of R:
///   B1 = C3 ∪ A2 ∪ A3 ∪ A5 (bottom-left), B2 = C4 ∪ A3 ∪ A4 ∪ A5 (bottom-right),
///   B3 = C1 ∪ A1 ∪ A3 ∪ A4 (top-right),   B4 = C2 ∪ A1 ∪ A2 ∪ A3 (top-left).
/// Pieces are closed and share their boundaries.
struct SquarePartition {
  std::array<Rect, 4> c;
  std::array<Rect, 5> a;
  std::array<Rect, 4> b;
};

inline SquarePartition partition_square(const Square& r, Coord delta) {
  if (delta <= 0 || 2 * delta > r.side())
    throw std::invalid_argument("partition width must satisfy 0 < delta <= side / 2");
  const Coord ax = r.ax(), ay = r.ay(), bx = r.bx(), by = r.by();
  const Coord xl = ax + delta, xr = bx - delta, yl = ay + delta, yh = by - delta;
  SquarePartition out;
  out.c = {Rect{xr, yh, bx, by}, Rect{ax, yh, xl, by}, Rect{ax, ay, xl, yl}, Rect{xr, ay, bx, yl}};
  out.a = {Rect{xl, yh, xr, by}, Rect{ax, yl, xl, yh}, Rect{xl, yl, xr, yh}, Rect{xr, yl, bx, yh},
           Rect{xl, ay, xr, yl}};
  out.b = {Rect{ax, ay, xr, yh}, Rect{xl, ay, bx, yh}, Rect{xl, yl, bx, by}, Rect{ax, yl, xr, by}};
  return out;
}

/// How a closest-pair query was answered.
struct RcpQueryStats {
  enum class Path { kFewPoints, kPartition };
  Path path = Path::kFewPoints;
  // Inner width used for the partition, doubled so it stays integral.
  Coord delta_times_two = 0;
  // Corner squares that held more than five points (only under exact d_inf
  // ties) and were answered with their inner boundary left out.
  int corner_overflows = 0;
};

/// Largest |coordinate| accepted by ClosestPairIndex (coordinates are doubled inside).
inline constexpr Coord kClosestPairCoordLimit = Coord{1} << 59;

/// Range closest-pair queries over squares, built from a range minimum-weight
/// backend plus anchored-square and sparse-report indexes.
///
/// A query with at most 9 points is answered directly. Otherwise the four
/// corner squares with 5 points give delta = min(l', l/2); pairs inside a
/// delta-corner are found by reporting its <= 5 points, and every other pair
/// closer than delta is a quadrant Yao edge starting in one of the four
/// (l - delta) corner squares, found by one minimum-weight query each.
template <template <class> class Rmw = LayeredRangeTree>
class ClosestPairIndex {
  static_assert(RmwBackend<Rmw<SquaredDistance>, SquaredDistance>);

 public:
  static constexpr bool requires_general_position = true;

  ClosestPairIndex() : ClosestPairIndex(std::vector<Point>{}) {}

  explicit ClosestPairIndex(std::vector<Point> points) : points_(std::move(points)) {
    require_coordinate_bound(points_, kClosestPairCoordLimit);
    require_distinct_ids(points_);
    if (auto violation = validate_cone_general_position(points_))
      throw GeneralPositionError(*violation);

    std::vector<Point> scaled;
    scaled.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i)
      scaled.push_back({2 * points_[i].x, 2 * points_[i].y, static_cast<PointId>(i)});

    few_ = SparseReportIndex(scaled, 9);
    corner_ = SparseReportIndex(scaled, 5);
    for (int k = 1; k <= 4; ++k) {
      const auto slot = static_cast<std::size_t>(k - 1);
      anchored_[slot] = AnchoredSquareIndex(scaled, 5, orientation_of_quadrant(k));
      neighbor_[slot].assign(scaled.size(), 0);
      std::vector<WeightedPoint<SquaredDistance>> weighted;
      for (const auto& e : compute_yao_weights(scaled, k)) {
        weighted.push_back({e.point, e.weight_sq});
        neighbor_[slot][e.point.id] = e.neighbor.id;
      }
      yao_size_[slot] = weighted.size();
      yao_[slot] = Rmw<SquaredDistance>(std::move(weighted));
    }
  }

  std::size_t size() const { return points_.size(); }
  /// |S_k|: points with a neighbor in quadrant k.
  std::size_t yao_subset_size(int k) const { return yao_size_.at(static_cast<std::size_t>(k - 1)); }

  ClosestPairAnswer query(const Square& r, RcpQueryStats* stats = nullptr) const {
    const Coord bound = kConeQueryLimit / 2;
    if (r.ax() < -bound || r.ay() < -bound || r.bx() > bound || r.by() > bound)
      throw std::out_of_range("query square exceeds coordinate bound");
    RcpQueryStats local;
    auto& st = stats ? *stats : local;
    st = RcpQueryStats{};
    const Square rs(2 * r.ax(), 2 * r.ay(), 2 * r.side());

    // At most 9 points: compare them all.
    const auto few = few_.report(rs);
    if (!is_more_than_c(few)) return unscale(pairwise(std::get<std::vector<Point>>(few)));
    st.path = RcpQueryStats::Path::kPartition;

    // Smallest corner square holding 5 points.
    const std::array<Point, 4> corners{Point{rs.bx(), rs.by()}, Point{rs.ax(), rs.by()},
                                       Point{rs.ax(), rs.ay()}, Point{rs.bx(), rs.ay()}};
    // anchored_[k-1] looks into Q_k of its anchor: BL, BR, TR, TL corners.
    const std::array<Point, 4> anchors{Point{rs.ax(), rs.ay()}, Point{rs.bx(), rs.ay()},
                                       Point{rs.bx(), rs.by()}, Point{rs.ax(), rs.by()}};
    Coord delta = rs.side() / 2;
    for (std::size_t k = 0; k < 4; ++k) {
      const auto res = anchored_[k].smallest_square(anchors[k]);
      if (is_insufficient(res))
        throw std::logic_error("closest pair: corner quadrant of a dense square has < 5 points");
      delta = std::min(delta, std::get<SquareWithPoints>(res).side);
    }
    if (delta <= 0) throw std::logic_error("closest pair: empty partition width");
    st.delta_times_two = delta;

    const auto part = partition_square(rs, delta);

    // Pairs inside one corner square.
    ClosestPairAnswer best;
    auto consider = [&](const ClosestPairAnswer& cand) {
      if (cand && (!best || cand->distance_sq < best->distance_sq)) best = cand;
    };
    for (std::size_t k = 0; k < 4; ++k) {
      const Rect& ck = part.c[k];
      auto found = corner_.report(Square(ck.ax, ck.ay, delta));
      if (is_more_than_c(found)) {
        ++st.corner_overflows;
        if (delta == 1) continue;  // the shrunk square is the corner point alone
        const Coord sx = corners[k].x == rs.ax() ? ck.ax : ck.ax + 1;
        const Coord sy = corners[k].y == rs.ay() ? ck.ay : ck.ay + 1;
        found = corner_.report(Square(sx, sy, delta - 1));
        if (is_more_than_c(found))
          throw std::logic_error("closest pair: corner square holds more than 5 points");
      }
      consider(pairwise(std::get<std::vector<Point>>(found)));
    }

    // Yao edges leaving the (l - delta) corner squares, shorter than delta.
    const SquaredDistance delta_sq = static_cast<SquaredDistance>(delta) * delta;
    for (std::size_t k = 0; k < 4; ++k) {
      const Rect& bk = part.b[k];
      const auto hit = yao_[k].query(Square::from_corners(bk.ax, bk.ay, bk.bx, bk.by));
      if (!hit || !(hit->weight < delta_sq)) continue;
      const auto& p = hit->point;
      const Point q = scaled_point(neighbor_[k][p.id]);
      consider(ClosestPair{p, q, hit->weight});
    }

    if (!best) throw std::logic_error("closest pair: dense square produced no pair");
    return unscale(best);
  }

  std::size_t memory_bytes() const {
    std::size_t bytes = points_.size() * sizeof(Point) + few_.memory_bytes() + corner_.memory_bytes();
    for (std::size_t k = 0; k < 4; ++k)
      bytes += anchored_[k].memory_bytes() + yao_[k].memory_bytes() +
               neighbor_[k].size() * sizeof(PointId);
    return bytes;
  }

 private:
  Point scaled_point(PointId i) const { return {2 * points_[i].x, 2 * points_[i].y, i}; }

  static ClosestPairAnswer pairwise(std::span<const Point> pts) {
    ClosestPairAnswer best;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const auto d = d_euclid_sq(pts[i], pts[j]);
        if (!best || d < best->distance_sq) best = ClosestPair{pts[i], pts[j], d};
      }
    return best;
  }

  ClosestPairAnswer unscale(const ClosestPairAnswer& a) const {
    if (!a) return a;
    return ClosestPair{points_[a->first.id], points_[a->second.id], a->distance_sq / 4};
  }

  std::vector<Point> points_;
  SparseReportIndex few_;
  SparseReportIndex corner_;
  std::array<AnchoredSquareIndex, 4> anchored_;
  std::array<Rmw<SquaredDistance>, 4> yao_;
  std::array<std::vector<PointId>, 4> neighbor_;
  std::array<std::size_t, 4> yao_size_{};
};

/// Closest pair by scanning the points inside the square.
class ScanClosestPair {
 public:
  static constexpr bool requires_general_position = false;

  ScanClosestPair() = default;
  explicit ScanClosestPair(std::vector<Point> points) : points_(std::move(points)) {}

  std::size_t size() const { return points_.size(); }

  ClosestPairAnswer query(const Square& r) const {
    std::vector<Point> inside;
    for (const auto& p : points_)
      if (r.contains(p)) inside.push_back(p);
    ClosestPairAnswer best;
    for (std::size_t i = 0; i < inside.size(); ++i)
      for (std::size_t j = i + 1; j < inside.size(); ++j) {
        const auto d = d_euclid_sq(inside[i], inside[j]);
        if (!best || d < best->distance_sq) best = ClosestPair{inside[i], inside[j], d};
      }
    return best;
  }

  std::size_t memory_bytes() const { return points_.size() * sizeof(Point); }

 private:
  std::vector<Point> points_;
};

static_assert(ClosestPairBackend<ClosestPairIndex<>>);
static_assert(ClosestPairBackend<ScanClosestPair>);

}  // namespace sqrange
