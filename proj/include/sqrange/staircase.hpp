#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sqrange/detail/dominance_topc.hpp"
#include "sqrange/detail/slab_locator.hpp"
#include "sqrange/geometry.hpp"

namespace sqrange {

using CellId = std::uint32_t;

/// Largest |coordinate| accepted by a staircase build. Leaves headroom below
/// the infinity sentinels for the x + y keys.
inline constexpr Coord kStaircaseCoordLimit = Coord{1} << 61;

struct Vertex {
  Coord x;
  Coord y;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// A staircase polygon. Its top edge runs from A = (step_x[0], by) to the
/// top-right vertex z = (bx, by), its right edge from z down to
/// C = (bx, step_y.back()), and the staircase path from A to C alternates
/// vertical edges at step_x[j] and horizontal edges at step_y[j]:
///
///   region = { step_x[0] <= x <= bx, y <= by, y >= step_y[j] }
///   for x in [step_x[j], step_x[j+1]), with step_x[m] = bx.
///
/// Coordinates may be kNegInf (left/bottom) or kPosInf (top-right).
struct StaircaseCell {
  Coord bx = kPosInf;
  Coord by = kPosInf;
  std::vector<Coord> step_x{kNegInf};
  std::vector<Coord> step_y{kNegInf};
  // |NE(z) ∩ S^(k)| for the iteration k that created the cell.
  std::size_t depth = 0;

  Vertex top_right() const { return {bx, by}; }
  std::size_t steps() const { return step_x.size(); }

  // Index j of the path's vertical edge at step_x[j] spanning height y.
  // Requires bottom < y < by and y not a path height.
  std::size_t row_of(Coord y) const {
    return static_cast<std::size_t>(
        std::partition_point(step_y.begin(), step_y.end(), [y](Coord v) { return v > y; }) -
        step_y.begin());
  }

  // Index i of the path's horizontal edge at step_y[i] spanning x.
  std::size_t column_of(Coord x) const {
    return static_cast<std::size_t>(
               std::partition_point(step_x.begin(), step_x.end(), [x](Coord v) { return v < x; }) -
               step_x.begin()) -
           1;
  }

  /// Northeast closure membership: interior, top edge without its leftmost
  /// point, right edge without its lowest point. Equivalent to the interior
  /// containing (p.x - eps, p.y - eps).
  bool nec_contains(const Point& p) const {
    if (!(step_x.front() < p.x && p.x <= bx && p.y <= by)) return false;
    return p.y > step_y[column_of(p.x)];
  }

  /// Closed-region membership (boundary included).
  bool contains(const Point& p) const {
    if (!(step_x.front() <= p.x && p.x <= bx && p.y <= by)) return false;
    const auto i = static_cast<std::size_t>(
                       std::partition_point(step_x.begin(), step_x.end(),
                                            [&](Coord v) { return v <= p.x; }) -
                       step_x.begin()) -
                   1;
    return p.y >= step_y[i];
  }

  /// Polygon vertices counter-clockwise, starting at z: z, A, path..., C.
  std::vector<Vertex> boundary() const {
    std::vector<Vertex> v;
    v.reserve(2 * steps() + 2);
    v.push_back({bx, by});
    v.push_back({step_x.front(), by});
    for (std::size_t j = 0; j < steps(); ++j) {
      v.push_back({step_x[j], step_y[j]});
      v.push_back({j + 1 < steps() ? step_x[j + 1] : bx, step_y[j]});
    }
    return v;
  }

  bool is_staircase() const {
    if (step_x.empty() || step_x.size() != step_y.size()) return false;
    if (!std::is_sorted(step_x.begin(), step_x.end(), std::less_equal<>{})) return false;
    if (!std::is_sorted(step_y.begin(), step_y.end(), std::greater_equal<>{})) return false;
    return step_x.back() < bx && step_y.front() < by;
  }
};

/// Number of edges of the planar subdivision formed by `cells`, counting
/// shared edges once and splitting segments at every vertex.
inline std::size_t count_subdivision_edges(std::span<const StaircaseCell> cells) {
  struct Segment {
    Coord line, lo, hi;
    bool operator<(const Segment& o) const {
      return std::tie(line, lo, hi) < std::tie(o.line, o.lo, o.hi);
    }
  };
  std::vector<Segment> vertical, horizontal;
  for (const auto& c : cells) {
    vertical.push_back({c.bx, c.step_y.back(), c.by});
    horizontal.push_back({c.by, c.step_x.front(), c.bx});
    for (std::size_t j = 0; j < c.steps(); ++j) {
      vertical.push_back({c.step_x[j], c.step_y[j], j == 0 ? c.by : c.step_y[j - 1]});
      horizontal.push_back({c.step_y[j], c.step_x[j], j + 1 < c.steps() ? c.step_x[j + 1] : c.bx});
    }
  }
  auto count = [](std::vector<Segment>& segs) {
    std::sort(segs.begin(), segs.end());
    std::size_t edges = 0;
    std::vector<Coord> ends;
    for (std::size_t i = 0; i < segs.size();) {
      std::size_t j = i;
      ends.clear();
      std::size_t components = 0;
      Coord reach = kNegInf;
      bool open = false;
      for (; j < segs.size() && segs[j].line == segs[i].line; ++j) {
        if (!open || segs[j].lo > reach) ++components;
        reach = open ? std::max(reach, segs[j].hi) : segs[j].hi;
        open = true;
        ends.push_back(segs[j].lo);
        ends.push_back(segs[j].hi);
      }
      std::sort(ends.begin(), ends.end());
      ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
      edges += ends.size() - components;
      i = j;
    }
    return edges;
  };
  return count(vertical) + count(horizontal);
}

/// State handed to the per-iteration hook, before p^(k) is inserted.
struct StaircaseIteration {
  std::size_t k = 0;  // 1-based insertion index
  Point inserted;
  std::span<const StaircaseCell> cells;  // SD^(k-1)
  CellId containing_cell = 0;
  // Cells met by the leftward / downward ray, starting with containing_cell.
  std::vector<CellId> left_ray;
  std::vector<CellId> down_ray;
};

struct StaircaseBuildOptions {
  std::function<void(const StaircaseIteration&)> on_iteration;
  // Checks the staircase shape of every cell after every insertion.
  bool validate_each_iteration = false;
};

namespace detail {

class SubdivisionBuilder {
 public:
  explicit SubdivisionBuilder(std::size_t c) : c_(c) {
    add_cell(StaircaseCell{});
  }

  void insert(const Point& p, std::size_t k, const StaircaseBuildOptions& options) {
    const CellId home = depth_zero_;
    if (!interior(cells_[home], p))
      throw std::logic_error("staircase build: point not interior to the depth-0 cell");

    std::vector<CellId> left{home}, down{home};
    for (CellId cur = home; left.size() < c_;) {
      const auto& cell = cells_[cur];
      const Coord v = cell.step_x[cell.row_of(p.y)];
      if (v == kNegInf) break;
      cur = right_edge_at(v, p.y);
      left.push_back(cur);
    }
    for (CellId cur = home; down.size() < c_;) {
      const auto& cell = cells_[cur];
      const Coord w = cell.step_y[cell.column_of(p.x)];
      if (w == kNegInf) break;
      cur = top_edge_at(w, p.x);
      down.push_back(cur);
    }

    if (options.on_iteration) {
      StaircaseIteration it;
      it.k = k;
      it.inserted = p;
      it.cells = cells_;
      it.containing_cell = home;
      it.left_ray = left;
      it.down_ray = down;
      options.on_iteration(it);
    }

    // The i-th ray cell has depth i, so its newly cut part (dominated by p) gets i + 1.
    for (std::size_t i = 1; i < left.size(); ++i) split_horizontal(left[i], p.y, i + 1);
    for (std::size_t i = 1; i < down.size(); ++i) split_vertical(down[i], p.x, i + 1);
    split_southwest(home, p);

    if (options.validate_each_iteration) validate();
  }

  void validate() const {
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (!cells_[i].is_staircase())
        throw std::logic_error("staircase build: cell " + std::to_string(i) +
                               " is not a staircase polygon");
  }

  std::vector<StaircaseCell> take_cells() { return std::move(cells_); }

 private:
  static bool interior(const StaircaseCell& c, const Point& p) {
    if (!(c.step_x.front() < p.x && p.x < c.bx && p.y < c.by)) return false;
    return p.y > c.step_y[c.column_of(p.x)];
  }

  CellId add_cell(StaircaseCell cell) {
    const auto id = static_cast<CellId>(cells_.size());
    register_edges(cell, id);
    cells_.push_back(std::move(cell));
    return id;
  }

  void register_edges(const StaircaseCell& cell, CellId id) {
    if (!right_edges_.emplace(std::pair{cell.bx, cell.by}, id).second ||
        !top_edges_.emplace(std::pair{cell.by, cell.bx}, id).second)
      throw std::logic_error("staircase build: duplicate top-right vertex");
  }

  // Cell whose right edge lies on the line x = v and spans height y.
  CellId right_edge_at(Coord v, Coord y) const {
    auto it = right_edges_.lower_bound({v, y});
    if (it == right_edges_.end() || it->first.first != v ||
        cells_[it->second].step_y.back() >= y)
      throw std::logic_error("staircase build: no cell left of a vertical edge");
    return it->second;
  }

  // Cell whose top edge lies on the line y = w and spans x.
  CellId top_edge_at(Coord w, Coord x) const {
    auto it = top_edges_.lower_bound({w, x});
    if (it == top_edges_.end() || it->first.first != w ||
        cells_[it->second].step_x.front() >= x)
      throw std::logic_error("staircase build: no cell below a horizontal edge");
    return it->second;
  }

  // The upper part keeps the id; the lower part gets top-right (bx, h).
  void split_horizontal(CellId id, Coord h, std::size_t depth) {
    StaircaseCell& upper = cells_[id];
    const std::size_t j = upper.row_of(h);
    StaircaseCell lower;
    lower.bx = upper.bx;
    lower.by = h;
    lower.step_x.assign(upper.step_x.begin() + static_cast<std::ptrdiff_t>(j), upper.step_x.end());
    lower.step_y.assign(upper.step_y.begin() + static_cast<std::ptrdiff_t>(j), upper.step_y.end());
    lower.depth = depth;
    upper.step_x.resize(j + 1);
    upper.step_y.resize(j);
    upper.step_y.push_back(h);
    add_cell(std::move(lower));
  }

  // The right part keeps the id; the left part gets top-right (v, by).
  void split_vertical(CellId id, Coord v, std::size_t depth) {
    StaircaseCell& right = cells_[id];
    const std::size_t i = right.column_of(v);
    StaircaseCell left;
    left.bx = v;
    left.by = right.by;
    left.step_x.assign(right.step_x.begin(), right.step_x.begin() + static_cast<std::ptrdiff_t>(i + 1));
    left.step_y.assign(right.step_y.begin(), right.step_y.begin() + static_cast<std::ptrdiff_t>(i + 1));
    left.depth = depth;
    right.step_x.erase(right.step_x.begin(), right.step_x.begin() + static_cast<std::ptrdiff_t>(i + 1));
    right.step_x.insert(right.step_x.begin(), v);
    right.step_y.erase(right.step_y.begin(), right.step_y.begin() + static_cast<std::ptrdiff_t>(i));
    add_cell(std::move(left));
  }

  // Cuts SW(p) out of the depth-0 cell; the remainder keeps the id and depth 0.
  void split_southwest(CellId id, const Point& p) {
    StaircaseCell& rest = cells_[id];
    const std::size_t j = rest.row_of(p.y);
    const std::size_t i = rest.column_of(p.x);
    StaircaseCell corner;
    corner.bx = p.x;
    corner.by = p.y;
    corner.step_x.assign(rest.step_x.begin() + static_cast<std::ptrdiff_t>(j),
                         rest.step_x.begin() + static_cast<std::ptrdiff_t>(i + 1));
    corner.step_y.assign(rest.step_y.begin() + static_cast<std::ptrdiff_t>(j),
                         rest.step_y.begin() + static_cast<std::ptrdiff_t>(i + 1));
    corner.depth = 1;

    std::vector<Coord> xs(rest.step_x.begin(), rest.step_x.begin() + static_cast<std::ptrdiff_t>(j + 1));
    xs.push_back(p.x);
    xs.insert(xs.end(), rest.step_x.begin() + static_cast<std::ptrdiff_t>(i + 1), rest.step_x.end());
    std::vector<Coord> ys(rest.step_y.begin(), rest.step_y.begin() + static_cast<std::ptrdiff_t>(j));
    ys.push_back(p.y);
    ys.insert(ys.end(), rest.step_y.begin() + static_cast<std::ptrdiff_t>(i), rest.step_y.end());
    rest.step_x = std::move(xs);
    rest.step_y = std::move(ys);
    add_cell(std::move(corner));
  }

  std::size_t c_;
  std::vector<StaircaseCell> cells_;
  std::map<std::pair<Coord, Coord>, CellId> right_edges_;  // (bx, by)
  std::map<std::pair<Coord, Coord>, CellId> top_edges_;    // (by, bx)
  CellId depth_zero_ = 0;
};

}  // namespace detail

/// Subdivision of the plane into staircase cells answering closest_c(p):
/// the (at most) c points of NE(p) ∩ S nearest to p under d1.
///
/// Points are inserted in increasing x + y order. Each insertion shoots a
/// ray left and a ray down from the new point, splitting the cells met
/// between the i-th and (i+1)-th crossed edge (i < c), and cuts SW(p) out of
/// the cell containing p. Every final cell stores closest_c of its top-right
/// vertex; a query locates the cell whose northeast closure holds p.
class StaircaseIndex {
 public:
  StaircaseIndex() : StaircaseIndex(std::vector<Point>{}, 1) {}

  StaircaseIndex(std::vector<Point> points, std::size_t c, const StaircaseBuildOptions& options = {})
      : c_(c) {
    if (c < 1 || (!points.empty() && c > points.size()))
      throw std::invalid_argument("staircase: c must lie in 1..n");
    require_coordinate_bound(points, kStaircaseCoordLimit);
    require_distinct_ids(points);
    if (auto violation = validate_general_position(points)) throw GeneralPositionError(*violation);

    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return a.x + a.y < b.x + b.y; });
    points_ = std::move(points);

    detail::SubdivisionBuilder builder(c_);
    for (std::size_t k = 0; k < points_.size(); ++k) builder.insert(points_[k], k + 1, options);
    builder.validate();
    cells_ = builder.take_cells();
    edge_count_ = count_subdivision_edges(cells_);

    std::vector<Point> corners;
    corners.reserve(cells_.size());
    for (const auto& cell : cells_) corners.push_back({cell.bx, cell.by, 0});
    std::vector<std::uint32_t> flat;
    detail::DominanceFirstC(points_, c_).run(corners, flat, answer_offsets_);
    answers_.reserve(flat.size());
    for (auto i : flat) answers_.push_back(points_[i]);

    std::vector<detail::SlabLocator::TopEdge> tops;
    tops.reserve(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i)
      tops.push_back({cells_[i].step_x.front(), cells_[i].bx, cells_[i].by, static_cast<std::uint32_t>(i)});
    locator_ = detail::SlabLocator(tops);
  }

  std::size_t c() const { return c_; }
  std::size_t size() const { return points_.size(); }
  std::size_t cell_count() const { return cells_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const StaircaseCell> cells() const { return cells_; }
  /// Input points in insertion (x + y) order.
  std::span<const Point> points() const { return points_; }

  /// S_c(C) of a cell, sorted by d1 from its top-right vertex.
  std::span<const Point> answer_set(CellId cell) const {
    return std::span<const Point>(answers_).subspan(
        answer_offsets_[cell], answer_offsets_[cell + 1] - answer_offsets_[cell]);
  }

  /// The unique cell whose northeast closure contains (x, y).
  CellId locate_nec(Coord x, Coord y) const { return locator_.locate(x, y); }
  CellId locate_nec(const Point& p) const { return locate_nec(p.x, p.y); }

  /// closest_c(p), sorted by d1 from p.
  std::span<const Point> closest_c(const Point& p) const { return answer_set(locate_nec(p)); }

  std::size_t cell_bound() const { return 1 + size() * (2 * c_ - 1); }
  std::size_t edge_bound() const { return 4 + 4 * size() * (2 * c_ - 1); }

  /// Rough heap footprint in bytes.
  std::size_t memory_bytes() const {
    std::size_t bytes = points_.size() * sizeof(Point) + answers_.size() * sizeof(Point) +
                        answer_offsets_.size() * sizeof(std::uint32_t) +
                        locator_.node_count() * locator_.node_bytes();
    for (const auto& cell : cells_) bytes += sizeof(cell) + 2 * cell.steps() * sizeof(Coord);
    return bytes;
  }

 private:
  std::size_t c_;
  std::vector<Point> points_;
  std::vector<StaircaseCell> cells_;
  std::vector<Point> answers_;
  std::vector<std::uint32_t> answer_offsets_;
  detail::SlabLocator locator_;
  std::size_t edge_count_ = 0;
};

}  // namespace sqrange
