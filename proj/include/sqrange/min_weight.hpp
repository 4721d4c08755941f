#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sqrange/closest_pair.hpp"
#include "sqrange/cone_queries.hpp"
#include "sqrange/geometry.hpp"
#include "sqrange/results.hpp"

namespace sqrange {

/// Positive rational num / den.
struct Rational {
  Coord num = 0;
  Coord den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Rank weights: point i gets rank[i] / (2n), rank 1-based in increasing
/// weight order, equal weights ordered by id.
struct NormalizedWeights {
  std::vector<std::size_t> rank;
  std::size_t n = 0;

  Rational rank_weight(std::size_t i) const {
    return {static_cast<Coord>(rank[i]), static_cast<Coord>(2 * n)};
  }
};

template <class W>
NormalizedWeights normalize_weights(std::span<const WeightedPoint<W>> s) {
  if (s.empty()) throw std::invalid_argument("normalize_weights: empty point set");
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (s[a].weight < s[b].weight) return true;
    if (s[b].weight < s[a].weight) return false;
    return s[a].point.id < s[b].point.id;
  });
  NormalizedWeights out;
  out.n = s.size();
  out.rank.resize(s.size());
  for (std::size_t r = 0; r < order.size(); ++r) out.rank[order[r]] = r + 1;
  return out;
}

/// Exact minimum squared pairwise distance, n >= 2.
inline SquaredDistance min_squared_distance(std::span<const Point> s) {
  if (s.size() < 2) throw std::invalid_argument("closest pair needs at least two points");
  std::vector<Point> pts(s.begin(), s.end());
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  std::optional<SquaredDistance> best;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const SquaredDistance dx = static_cast<SquaredDistance>(pts[j].x) - pts[i].x;
      if (best && dx * dx >= *best) break;
      const auto d = d_euclid_sq(pts[i], pts[j]);
      if (!best || d < *best) best = d;
    }
  return *best;
}

/// Rational lower bound on the closest-pair distance: floor(sqrt(D * den^2)) / den.
/// At least half the true distance for integer points.
inline Rational compute_delta_hat(std::span<const Point> s, Coord den = 1) {
  if (den < 1) throw std::invalid_argument("delta_hat denominator must be positive");
  const SquaredDistance d = min_squared_distance(s);
  const SquaredDistance d2 = static_cast<SquaredDistance>(den) * den;
  const SquaredDistance num = isqrt(d * d2);
  if (num * num > d * d2 || num <= 0) throw std::logic_error("delta_hat validation failed");
  return {static_cast<Coord>(num), den};
}

/// S ∪ S' in integer units: coordinates scaled by `scale` = 6 n den so the
/// satellite offsets delta_hat * (rank / 2n) / 3 = num * rank become integers.
/// Ids: base i, plus-satellite n + i, minus-satellite 2n + i, where i is the
/// input position.
struct DoubledPointSet {
  std::vector<Point> points;
  Coord scale = 1;
  Rational delta_hat;
  // delta_hat in scaled units, 6 n num.
  Coord scaled_delta_hat = 0;
  std::size_t n = 0;

  std::size_t owner(PointId id) const { return id % n; }
  bool is_base(PointId id) const { return id < n; }
};

namespace detail {

inline Coord checked_mul(Coord a, Coord b) {
  const SquaredDistance v = static_cast<SquaredDistance>(a) * b;
  if (v > kClosestPairCoordLimit || v < -kClosestPairCoordLimit)
    throw std::out_of_range("scaled coordinates exceed the supported range");
  return static_cast<Coord>(v);
}

}  // namespace detail

inline DoubledPointSet build_doubled_set(std::span<const Point> s, const NormalizedWeights& w,
                                         Rational delta_hat) {
  const std::size_t n = s.size();
  if (n < 2) throw std::invalid_argument("doubled set needs at least two points");
  if (delta_hat.num <= 0 || delta_hat.den <= 0) throw std::invalid_argument("delta_hat must be positive");
  const SquaredDistance lhs = static_cast<SquaredDistance>(delta_hat.num) * delta_hat.num;
  const SquaredDistance rhs = min_squared_distance(s) * delta_hat.den * delta_hat.den;
  if (lhs > rhs) throw std::invalid_argument("delta_hat exceeds the closest-pair distance");

  DoubledPointSet out;
  out.n = n;
  out.delta_hat = delta_hat;
  out.scale = detail::checked_mul(static_cast<Coord>(6 * n), delta_hat.den);
  out.scaled_delta_hat = detail::checked_mul(static_cast<Coord>(6 * n), delta_hat.num);
  out.points.resize(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Coord x = detail::checked_mul(out.scale, s[i].x);
    const Coord y = detail::checked_mul(out.scale, s[i].y);
    const Coord offset = detail::checked_mul(delta_hat.num, static_cast<Coord>(w.rank[i]));
    out.points[i] = {x, y, static_cast<PointId>(i)};
    out.points[n + i] = {detail::checked_mul(1, x + offset), y, static_cast<PointId>(n + i)};
    out.points[2 * n + i] = {detail::checked_mul(1, x - offset), y, static_cast<PointId>(2 * n + i)};
  }
  return out;
}

/// Integer tilt putting S ∪ S' into general position for backends that need
/// it: point i maps to (K x + i, K y + N i) with N = |S ∪ S'| and K = 8N^2 + 8.
/// Moves each point by less than N^2 < K/8, so every strict distance gap of
/// at least K survives, and square membership is kept by growing a query
/// by K/2 on every side.
class Tilt {
 public:
  explicit Tilt(std::size_t count)
      : n_(static_cast<Coord>(count)), k_(8 * static_cast<Coord>(count) * static_cast<Coord>(count) + 8) {}

  Coord factor() const { return k_; }

  Point apply(const Point& p, std::size_t index) const {
    const Coord i = static_cast<Coord>(index);
    return {detail::checked_mul(k_, p.x) + i, detail::checked_mul(k_, p.y) + n_ * i, p.id};
  }

  Square apply(const Square& r) const {
    return Square(detail::checked_mul(k_, r.ax()) - k_ / 2, detail::checked_mul(k_, r.ay()) - k_ / 2,
                  detail::checked_mul(k_, r.side()) + k_);
  }

 private:
  Coord n_;
  Coord k_;
};

/// Range minimum-weight queries over squares, answered by one range
/// closest-pair query: each point gets two horizontal satellites at a
/// distance proportional to its weight rank, so the closest pair inside R is
/// the lightest point of R and one of its own satellites.
template <ClosestPairBackend Cp, class W = double>
class MinWeightIndex {
 public:
  MinWeightIndex() : MinWeightIndex(std::vector<WeightedPoint<W>>{}) {}

  explicit MinWeightIndex(std::vector<WeightedPoint<W>> points,
                          std::optional<Rational> delta_hat = std::nullopt)
      : items_(std::move(points)) {
    std::vector<Point> base;
    base.reserve(items_.size());
    for (std::size_t i = 0; i < items_.size(); ++i)
      base.push_back({items_[i].point.x, items_[i].point.y, static_cast<PointId>(i)});
    require_distinct_ids(points_of(items_));
    membership_ = SparseReportIndex(base, 1);
    if (items_.size() < 2) return;

    const auto weights = normalize_weights<W>(items_);
    doubled_ = build_doubled_set(base, weights, delta_hat ? *delta_hat : compute_delta_hat(base));
    std::vector<Point> cp_points = doubled_.points;
    if constexpr (Cp::requires_general_position) {
      tilt_.emplace(cp_points.size());
      for (std::size_t i = 0; i < cp_points.size(); ++i) cp_points[i] = tilt_->apply(cp_points[i], i);
    }
    cp_ = Cp(std::move(cp_points));
  }

  std::size_t size() const { return items_.size(); }
  const DoubledPointSet& doubled_set() const { return doubled_; }
  const Cp& closest_pair_backend() const { return cp_; }

  std::optional<WeightedPoint<W>> query(const Square& r) const {
    const auto few = membership_.report(r);
    if (!is_more_than_c(few)) {
      const auto& pts = std::get<std::vector<Point>>(few);
      if (pts.empty()) return std::nullopt;
      return items_[pts.front().id];
    }
    Square scaled(detail::checked_mul(doubled_.scale, r.ax()), detail::checked_mul(doubled_.scale, r.ay()),
                  detail::checked_mul(doubled_.scale, r.side()));
    if (tilt_) scaled = tilt_->apply(scaled);
    const auto pair = cp_.query(scaled);
    if (!pair) throw std::logic_error("min weight: no closest pair in a square with two points");
    const PointId a = pair->first.id, b = pair->second.id;
    const bool a_base = doubled_.is_base(a), b_base = doubled_.is_base(b);
    if (a_base == b_base || doubled_.owner(a) != doubled_.owner(b))
      throw std::logic_error("min weight: closest pair is not a point and its own satellite");
    return items_[doubled_.owner(a)];
  }

  std::optional<WeightedPoint<W>> query(const Rect& r) const {
    if (r.bx - r.ax != r.by - r.ay) throw std::invalid_argument("min weight index answers squares only");
    return query(Square(r.ax, r.ay, r.bx - r.ax));
  }

 private:
  static std::vector<Point> points_of(std::span<const WeightedPoint<W>> v) {
    std::vector<Point> out;
    for (const auto& wp : v) out.push_back(wp.point);
    return out;
  }

  std::vector<WeightedPoint<W>> items_;
  SparseReportIndex membership_;
  DoubledPointSet doubled_;
  std::optional<Tilt> tilt_;
  Cp cp_;
};

}  // namespace sqrange
