#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "sqrange/geometry.hpp"

namespace sqrange::detail {

/// Offline batch of "first c points of NE(z)" queries, where the point order
/// is the order of `ordered` (callers pass points sorted by x + y).
///
/// Sweeps z.x downward, inserting points into a segment tree over y-rank whose
/// nodes keep the c smallest order indices of their range. Results for query
/// i are written to flat[offsets[i] .. offsets[i+1]) as indices into
/// `ordered`, ascending.
class DominanceFirstC {
 public:
  DominanceFirstC(std::span<const Point> ordered, std::size_t c)
      : points_(ordered), c_(c) {
    ys_.reserve(points_.size());
    for (const auto& p : points_) ys_.push_back(p.y);
    std::sort(ys_.begin(), ys_.end());
    leaves_ = 1;
    while (leaves_ < ys_.size()) leaves_ *= 2;
    lists_.assign(2 * leaves_ * c_, 0);
    counts_.assign(2 * leaves_, 0);
  }

  void run(std::span<const Point> queries, std::vector<std::uint32_t>& flat,
           std::vector<std::uint32_t>& offsets) {
    std::vector<std::uint32_t> by_x(points_.size());
    std::iota(by_x.begin(), by_x.end(), 0u);
    std::sort(by_x.begin(), by_x.end(),
              [&](auto a, auto b) { return points_[a].x > points_[b].x; });
    std::vector<std::uint32_t> qorder(queries.size());
    std::iota(qorder.begin(), qorder.end(), 0u);
    std::sort(qorder.begin(), qorder.end(),
              [&](auto a, auto b) { return queries[a].x > queries[b].x; });

    std::vector<std::uint32_t> result(queries.size() * c_);
    std::vector<std::uint32_t> result_count(queries.size(), 0);
    std::vector<std::uint32_t> scratch;
    std::size_t next = 0;
    for (auto qi : qorder) {
      const Point& z = queries[qi];
      while (next < by_x.size() && points_[by_x[next]].x >= z.x) insert(by_x[next++]);
      scratch.clear();
      const auto first_rank =
          static_cast<std::size_t>(std::lower_bound(ys_.begin(), ys_.end(), z.y) - ys_.begin());
      collect(first_rank, scratch);
      std::sort(scratch.begin(), scratch.end());
      const std::size_t take = std::min(c_, scratch.size());
      std::copy_n(scratch.begin(), take, result.begin() + static_cast<std::ptrdiff_t>(qi * c_));
      result_count[qi] = static_cast<std::uint32_t>(take);
    }

    offsets.assign(queries.size() + 1, 0);
    for (std::size_t i = 0; i < queries.size(); ++i) offsets[i + 1] = offsets[i] + result_count[i];
    flat.resize(offsets.back());
    for (std::size_t i = 0; i < queries.size(); ++i)
      std::copy_n(result.begin() + static_cast<std::ptrdiff_t>(i * c_), result_count[i],
                  flat.begin() + offsets[i]);
  }

 private:
  void push(std::size_t node, std::uint32_t order) {
    auto* list = &lists_[node * c_];
    auto& count = counts_[node];
    std::size_t pos = count;
    while (pos > 0 && list[pos - 1] > order) --pos;
    if (pos >= c_) return;
    const std::size_t end = std::min<std::size_t>(count, c_ - 1);
    for (std::size_t i = end; i > pos; --i) list[i] = list[i - 1];
    list[pos] = order;
    if (count < c_) ++count;
  }

  void insert(std::uint32_t order) {
    const auto rank = static_cast<std::size_t>(
        std::lower_bound(ys_.begin(), ys_.end(), points_[order].y) - ys_.begin());
    for (std::size_t node = leaves_ + rank; node >= 1; node /= 2) push(node, order);
  }

  void take_node(std::size_t node, std::vector<std::uint32_t>& out) const {
    const auto* list = &lists_[node * c_];
    out.insert(out.end(), list, list + counts_[node]);
  }

  // Canonical nodes covering ranks [first, leaves_).
  void collect(std::size_t first, std::vector<std::uint32_t>& out) const {
    std::size_t lo = first + leaves_, hi = 2 * leaves_;
    while (lo < hi) {
      if (lo & 1) take_node(lo++, out);
      if (hi & 1) take_node(--hi, out);
      lo /= 2;
      hi /= 2;
    }
  }

  std::span<const Point> points_;
  std::size_t c_;
  std::vector<Coord> ys_;
  std::size_t leaves_ = 1;
  std::vector<std::uint32_t> lists_;
  std::vector<std::uint32_t> counts_;
};

}  // namespace sqrange::detail
