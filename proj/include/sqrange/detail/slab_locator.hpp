#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sqrange/geometry.hpp"

namespace sqrange::detail {

/// lower_bound over a sorted key array through a small sampled top level, so
/// a search touches a few cache lines instead of log2(n) scattered ones.
class BlockSearch {
 public:
  static constexpr std::size_t kBlock = 32;

  BlockSearch() = default;
  explicit BlockSearch(std::vector<Coord> keys) : keys_(std::move(keys)) {
    for (std::size_t i = kBlock - 1; i < keys_.size(); i += kBlock) samples_.push_back(keys_[i]);
  }

  const std::vector<Coord>& keys() const { return keys_; }
  std::size_t size() const { return keys_.size(); }

  /// Index of the first key >= v.
  std::size_t lower_bound(Coord v) const {
    // samples_[b] is the last key of block b.
    const auto block = static_cast<std::size_t>(
        std::lower_bound(samples_.begin(), samples_.end(), v) - samples_.begin());
    const std::size_t lo = block * kBlock;
    const std::size_t hi = std::min(keys_.size(), lo + kBlock);
    return static_cast<std::size_t>(
        std::lower_bound(keys_.begin() + static_cast<std::ptrdiff_t>(lo),
                         keys_.begin() + static_cast<std::ptrdiff_t>(hi), v) -
        keys_.begin());
  }

 private:
  std::vector<Coord> keys_;
  std::vector<Coord> samples_;
};

/// Vertical ray shooting over the top edges of a subdivision.
///
/// Sweeping x from left to right, the set of top edges crossing the current
/// slab is kept in a persistent 15-ary tree over y-rank (path copying, one
/// version per distinct slab boundary). A query picks the version of its slab
/// and returns the lowest top edge at or above it: that edge bounds the cell
/// containing the point. O(E log E) space, O(log E) query.
class SlabLocator {
 public:
  struct TopEdge {
    Coord x_left;
    Coord x_right;
    Coord y;
    std::uint32_t cell;
  };

  SlabLocator() = default;

  explicit SlabLocator(const std::vector<TopEdge>& edges) {
    std::vector<Coord> ys;
    ys.reserve(edges.size());
    for (const auto& e : edges) ys.push_back(e.y);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    if (ys.empty()) return;
    ys_ = BlockSearch(std::move(ys));
    levels_ = 1;
    for (std::size_t span = kFan; span < ys_.size(); span *= kFan) ++levels_;
    place_.assign(levels_, 1);
    for (unsigned l = 1; l < levels_; ++l) place_[l] = place_[l - 1] * kFan;

    nodes_.push_back(Node{});  // shared empty subtree at every level

    std::vector<const TopEdge*> by_left, by_right;
    for (const auto& e : edges) {
      by_left.push_back(&e);
      if (e.x_right != kPosInf) by_right.push_back(&e);
    }
    std::sort(by_left.begin(), by_left.end(), [](auto a, auto b) { return a->x_left < b->x_left; });
    std::sort(by_right.begin(), by_right.end(), [](auto a, auto b) { return a->x_right < b->x_right; });

    std::vector<Coord> slab_x;
    std::uint32_t root = 0;
    std::size_t li = 0, ri = 0;
    while (li < by_left.size() || ri < by_right.size()) {
      Coord x = kPosInf;
      if (li < by_left.size()) x = by_left[li]->x_left;
      if (ri < by_right.size()) x = std::min(x, by_right[ri]->x_right);
      frozen_ = static_cast<std::uint32_t>(nodes_.size());
      for (; ri < by_right.size() && by_right[ri]->x_right == x; ++ri)
        root = assign(root, levels_ - 1, rank(by_right[ri]->y), 0);
      for (; li < by_left.size() && by_left[li]->x_left == x; ++li)
        root = assign(root, levels_ - 1, rank(by_left[li]->y), by_left[li]->cell + 1);
      slab_x.push_back(x);
      roots_.push_back(root);
    }
    slab_x_ = BlockSearch(std::move(slab_x));
  }

  /// Cell whose interior contains (px - eps, py - eps).
  std::uint32_t locate(Coord px, Coord py) const {
    // Last version whose boundary lies strictly left of px.
    const std::size_t after = slab_x_.lower_bound(px);
    if (after == 0) throw std::logic_error("slab locator: no slab left of query");
    const std::size_t r = ys_.lower_bound(py);
    const std::int64_t found = first_occupied(roots_[after - 1], levels_ - 1, r);
    if (found < 0) throw std::logic_error("slab locator: no edge above query");
    return static_cast<std::uint32_t>(found);
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t node_bytes() const { return sizeof(Node); }
  std::size_t version_count() const { return roots_.size(); }

 private:
  static constexpr unsigned kFan = 15;

  /// One cache line per tree level.
  struct alignas(64) Node {
    // Children (node indices) above the bottom level; cell + 1 or 0 at it.
    std::array<std::uint32_t, kFan> child{};
    // Bit i set iff child i holds at least one edge.
    std::uint32_t mask = 0;
  };

  std::size_t rank(Coord y) const { return ys_.lower_bound(y); }

  unsigned digit(std::size_t r, unsigned level) const {
    return static_cast<unsigned>((r / place_[level]) % kFan);
  }

  std::uint32_t writable(std::uint32_t node) {
    if (node >= frozen_ && node != 0) return node;
    nodes_.push_back(nodes_[node]);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  std::uint32_t assign(std::uint32_t node, unsigned level, std::size_t r, std::uint32_t value) {
    const std::uint32_t out = writable(node);
    const unsigned d = digit(r, level);
    bool occupied;
    if (level == 0) {
      nodes_[out].child[d] = value;
      occupied = value != 0;
    } else {
      const std::uint32_t child = assign(nodes_[out].child[d], level - 1, r, value);
      nodes_[out].child[d] = child;
      occupied = nodes_[child].mask != 0;
    }
    if (occupied) nodes_[out].mask |= 1u << d;
    else nodes_[out].mask &= ~(1u << d);
    return out;
  }

  // Value of the lowest occupied rank >= r below node, or -1.
  std::int64_t first_occupied(std::uint32_t node, unsigned level, std::size_t r) const {
    const Node& n = nodes_[node];
    const unsigned d = digit(r, level);
    std::uint32_t candidates = n.mask & (~0u << d);
    if (candidates == 0) return -1;
    if (candidates & (1u << d)) {
      if (level == 0) return static_cast<std::int64_t>(n.child[d]) - 1;
      if (const auto found = first_occupied(n.child[d], level - 1, r); found >= 0) return found;
      candidates &= ~(1u << d);
      if (candidates == 0) return -1;
    }
    // Leftmost occupied leaf of the next occupied sibling.
    std::uint32_t cur = node;
    unsigned c = static_cast<unsigned>(std::countr_zero(candidates));
    for (unsigned l = level;; --l) {
      if (l == 0) return static_cast<std::int64_t>(nodes_[cur].child[c]) - 1;
      cur = nodes_[cur].child[c];
      c = static_cast<unsigned>(std::countr_zero(nodes_[cur].mask));
    }
  }

  BlockSearch ys_;
  BlockSearch slab_x_;
  unsigned levels_ = 1;
  std::vector<std::size_t> place_{1};
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> roots_;
  std::uint32_t frozen_ = 0;
};

}  // namespace sqrange::detail
