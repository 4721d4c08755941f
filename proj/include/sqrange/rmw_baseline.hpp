#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "sqrange/geometry.hpp"

namespace sqrange {

/// A range minimum-weight backend: built from weighted points, answers the
/// minimum-weight point in a query square (ties to the lowest id), or empty.
template <class Index, class W>
concept RmwBackend = std::constructible_from<Index, std::vector<WeightedPoint<W>>> &&
                     requires(const Index& index, const Square& r) {
                       { index.query(r) } -> std::same_as<std::optional<WeightedPoint<W>>>;
                     };

namespace detail {

template <class W>
bool lighter(const WeightedPoint<W>& a, const WeightedPoint<W>& b) {
  if (a.weight < b.weight) return true;
  if (b.weight < a.weight) return false;
  return a.point.id < b.point.id;
}

}  // namespace detail

/// Static 2-D range tree: a balanced tree over x whose nodes keep their
/// points sorted by y, each with a min segment tree over weights.
/// O(m log m) space, O(log^2 m) per query. No general-position requirement.
template <class W>
class LayeredRangeTree {
 public:
  LayeredRangeTree() = default;

  explicit LayeredRangeTree(std::vector<WeightedPoint<W>> points) : items_(std::move(points)) {
    const std::size_t m = items_.size();
    if (m == 0) return;
    std::sort(items_.begin(), items_.end(), [](const auto& a, const auto& b) {
      return a.point.x != b.point.x ? a.point.x < b.point.x : a.point.id < b.point.id;
    });
    xs_.reserve(m);
    for (const auto& it : items_) xs_.push_back(it.point.x);

    leaves_ = 1;
    while (leaves_ < m) leaves_ *= 2;
    offset_.assign(2 * leaves_ + 1, 0);
    // Node v covers the leaf range [lo, hi); record its list size.
    for (std::size_t v = 1; v < 2 * leaves_; ++v) {
      const auto [lo, hi] = range_of(v);
      offset_[v + 1] = offset_[v] + (hi > lo ? hi - lo : 0);
    }
    order_.resize(offset_[2 * leaves_]);
    ys_.resize(order_.size());
    mins_.resize(2 * order_.size());

    for (std::size_t v = 2 * leaves_ - 1; v >= 1; --v) {
      const std::size_t len = offset_[v + 1] - offset_[v];
      if (len == 0) continue;
      std::uint32_t* out = order_.data() + offset_[v];
      if (v >= leaves_) {
        out[0] = static_cast<std::uint32_t>(v - leaves_);
      } else {
        const auto* l = order_.data() + offset_[2 * v];
        const auto* r = order_.data() + offset_[2 * v + 1];
        std::merge(l, l + (offset_[2 * v + 1] - offset_[2 * v]), r,
                   r + (offset_[2 * v + 2] - offset_[2 * v + 1]), out,
                   [&](std::uint32_t a, std::uint32_t b) { return by_y(a, b); });
      }
      for (std::size_t i = 0; i < len; ++i) ys_[offset_[v] + i] = items_[out[i]].point.y;
      // Segment tree for this node occupies mins_[2 * offset_[v], 2 * offset_[v + 1]).
      std::uint32_t* tree = mins_.data() + 2 * offset_[v];
      for (std::size_t i = 0; i < len; ++i) tree[len + i] = out[i];
      for (std::size_t i = len - 1; i >= 1; --i) tree[i] = better(tree[2 * i], tree[2 * i + 1]);
    }
  }

  std::size_t size() const { return items_.size(); }

  std::optional<WeightedPoint<W>> query(const Rect& r) const {
    if (items_.empty() || r.empty()) return std::nullopt;
    std::size_t lo = static_cast<std::size_t>(std::lower_bound(xs_.begin(), xs_.end(), r.ax) - xs_.begin());
    std::size_t hi = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), r.bx) - xs_.begin());
    std::optional<std::uint32_t> best;
    auto visit = [&](std::size_t v) {
      if (auto found = node_min(v, r.ay, r.by)) best = best ? better(*best, *found) : *found;
    };
    for (lo += leaves_, hi += leaves_; lo < hi; lo /= 2, hi /= 2) {
      if (lo & 1) visit(lo++);
      if (hi & 1) visit(--hi);
    }
    if (!best) return std::nullopt;
    return items_[*best];
  }

  std::optional<WeightedPoint<W>> query(const Square& r) const { return query(r.rect()); }

  std::size_t memory_bytes() const {
    return items_.size() * sizeof(WeightedPoint<W>) + xs_.size() * sizeof(Coord) +
           order_.size() * sizeof(std::uint32_t) + ys_.size() * sizeof(Coord) +
           mins_.size() * sizeof(std::uint32_t) + offset_.size() * sizeof(std::size_t);
  }

 private:
  std::pair<std::size_t, std::size_t> range_of(std::size_t v) const {
    std::size_t lo = v, hi = v + 1;
    while (lo < leaves_) {
      lo *= 2;
      hi *= 2;
    }
    lo -= leaves_;
    hi -= leaves_;
    return {std::min(lo, items_.size()), std::min(hi, items_.size())};
  }

  bool by_y(std::uint32_t a, std::uint32_t b) const {
    const auto& pa = items_[a].point;
    const auto& pb = items_[b].point;
    return pa.y != pb.y ? pa.y < pb.y : pa.id < pb.id;
  }

  std::uint32_t better(std::uint32_t a, std::uint32_t b) const {
    return detail::lighter(items_[b], items_[a]) ? b : a;
  }

  std::optional<std::uint32_t> node_min(std::size_t v, Coord ylo, Coord yhi) const {
    const auto first = ys_.begin() + static_cast<std::ptrdiff_t>(offset_[v]);
    const auto last = ys_.begin() + static_cast<std::ptrdiff_t>(offset_[v + 1]);
    std::size_t lo = static_cast<std::size_t>(std::lower_bound(first, last, ylo) - first);
    std::size_t hi = static_cast<std::size_t>(std::upper_bound(first, last, yhi) - first);
    if (lo >= hi) return std::nullopt;
    const std::size_t len = offset_[v + 1] - offset_[v];
    const std::uint32_t* tree = mins_.data() + 2 * offset_[v];
    std::optional<std::uint32_t> best;
    auto take = [&](std::uint32_t i) { best = best ? better(*best, i) : i; };
    for (lo += len, hi += len; lo < hi; lo /= 2, hi /= 2) {
      if (lo & 1) take(tree[lo++]);
      if (hi & 1) take(tree[--hi]);
    }
    return best;
  }

  std::vector<WeightedPoint<W>> items_;  // sorted by x
  std::vector<Coord> xs_;
  std::size_t leaves_ = 0;
  std::vector<std::size_t> offset_;
  std::vector<std::uint32_t> order_;  // per node, item indices sorted by y
  std::vector<Coord> ys_;
  std::vector<std::uint32_t> mins_;
};

/// Linear-scan backend with the same contract as LayeredRangeTree.
template <class W>
class ScanRmw {
 public:
  ScanRmw() = default;
  explicit ScanRmw(std::vector<WeightedPoint<W>> points) : items_(std::move(points)) {}

  std::size_t size() const { return items_.size(); }

  std::optional<WeightedPoint<W>> query(const Rect& r) const {
    std::optional<WeightedPoint<W>> best;
    for (const auto& it : items_)
      if (r.contains(it.point) && (!best || detail::lighter(it, *best))) best = it;
    return best;
  }
  std::optional<WeightedPoint<W>> query(const Square& r) const { return query(r.rect()); }

  std::size_t memory_bytes() const { return items_.size() * sizeof(WeightedPoint<W>); }

 private:
  std::vector<WeightedPoint<W>> items_;
};

static_assert(RmwBackend<LayeredRangeTree<double>, double>);
static_assert(RmwBackend<ScanRmw<double>, double>);

}  // namespace sqrange
