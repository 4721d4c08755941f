#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sqrange/geometry.hpp"
#include "sqrange/results.hpp"
#include "sqrange/staircase.hpp"

/// Reference answers by direct filtering and scanning. Nothing here touches
/// the index structures.
namespace sqrange::oracle {

inline std::vector<Point> brute_closest_c(std::span<const Point> s, const Point& p, std::size_t c) {
  std::vector<Point> hits;
  for (const auto& q : s)
    if (in_ne(p, q)) hits.push_back(q);
  std::sort(hits.begin(), hits.end(), [&](const Point& a, const Point& b) {
    const Coord da = d1(p, a), db = d1(p, b);
    return da != db ? da < db : a.id < b.id;
  });
  if (hits.size() > c) hits.resize(c);
  return hits;
}

inline std::size_t brute_count_in_range(std::span<const Point> s, const Rect& r) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [&](const Point& p) { return r.contains(p); }));
}
inline std::size_t brute_count_in_range(std::span<const Point> s, const Square& r) {
  return brute_count_in_range(s, r.rect());
}

inline std::vector<Point> brute_filter(std::span<const Point> s, const Rect& r) {
  std::vector<Point> out;
  for (const auto& p : s)
    if (r.contains(p)) out.push_back(p);
  return out;
}

inline SparseReportResult brute_sparse_report(std::span<const Point> s, const Square& r,
                                              std::size_t c) {
  auto hits = brute_filter(s, r.rect());
  if (hits.size() > c) return MoreThanC{};
  return hits;
}

inline ClosestPairAnswer brute_closest_pair(std::span<const Point> s) {
  ClosestPairAnswer best;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const auto d = d_euclid_sq(s[i], s[j]);
      if (!best || d < best->distance_sq) best = ClosestPair{s[i], s[j], d};
    }
  return best;
}

inline ClosestPairAnswer brute_closest_pair_in_range(std::span<const Point> s, const Square& r) {
  return brute_closest_pair(brute_filter(s, r.rect()));
}

template <class W>
std::optional<WeightedPoint<W>> brute_min_weight_in_range(std::span<const WeightedPoint<W>> v,
                                                          const Rect& r) {
  std::optional<WeightedPoint<W>> best;
  for (const auto& wp : v) {
    if (!r.contains(wp.point)) continue;
    if (!best || wp.weight < best->weight ||
        (!(best->weight < wp.weight) && wp.point.id < best->point.id))
      best = wp;
  }
  return best;
}

template <class W>
std::optional<WeightedPoint<W>> brute_min_weight_in_range(std::span<const WeightedPoint<W>> v,
                                                          const Square& r) {
  return brute_min_weight_in_range(v, r.rect());
}

/// Smallest square with corner o at p holding c points of S.
inline AnchoredSquareResult brute_anchored_square(std::span<const Point> s, const Point& p,
                                                  std::size_t c, Orientation o) {
  const int k = quadrant_of(o);
  std::vector<Point> hits;
  for (const auto& q : s)
    if (in_quadrant(p, q, k)) hits.push_back(q);
  if (c == 0 || hits.size() < c) return InsufficientPoints{};
  std::sort(hits.begin(), hits.end(), [&](const Point& a, const Point& b) {
    const Coord da = d_inf(p, a), db = d_inf(p, b);
    return da != db ? da < db : a.id < b.id;
  });
  hits.resize(c);
  return SquareWithPoints{d_inf(p, hits.back()), hits, hits.back()};
}

/// Squared distance from each point to its nearest neighbor in Q_k(p) \ {p};
/// points with an empty quadrant are omitted. Output keeps input order.
inline std::vector<WeightedPoint<SquaredDistance>> brute_yao_weights(std::span<const Point> s,
                                                                      int k) {
  std::vector<WeightedPoint<SquaredDistance>> out;
  for (const auto& p : s) {
    std::optional<SquaredDistance> best;
    for (const auto& q : s) {
      if (q.id == p.id || !in_quadrant(p, q, k)) continue;
      const auto d = d_euclid_sq(p, q);
      if (!best || d < *best) best = d;
    }
    if (best) out.push_back({p, *best});
  }
  return out;
}

/// Index of the unique cell whose northeast closure holds p, by testing every cell.
inline std::size_t brute_locate_nec(std::span<const StaircaseCell> cells, const Point& p) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].nec_contains(p)) {
      if (found) throw std::logic_error("northeast closures overlap");
      found = i;
    }
  if (!found) throw std::logic_error("no northeast closure holds the point");
  return *found;
}

}  // namespace sqrange::oracle
