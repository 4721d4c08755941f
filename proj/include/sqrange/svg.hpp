#pragma once

#include <algorithm>
#include <ostream>
#include <vector>

#include "sqrange/staircase.hpp"

namespace sqrange {

/// |NE(z) ∩ S| for the top-right vertex z of every cell.
inline std::vector<std::size_t> final_depths(const StaircaseIndex& index) {
  std::vector<std::size_t> out;
  out.reserve(index.cell_count());
  for (const auto& cell : index.cells()) {
    const Point z{cell.bx, cell.by};
    out.push_back(static_cast<std::size_t>(std::count_if(
        index.points().begin(), index.points().end(), [&](const Point& p) { return in_ne(z, p); })));
  }
  return out;
}

/// Draws the subdivision clipped to a frame around the points, each cell
/// labelled with its depth.
inline void write_svg(std::ostream& out, const StaircaseIndex& index) {
  Coord lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  bool any = false;
  for (const auto& p : index.points()) {
    if (!any) lo_x = hi_x = p.x, lo_y = hi_y = p.y;
    lo_x = std::min(lo_x, p.x), hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y), hi_y = std::max(hi_y, p.y);
    any = true;
  }
  const double span = std::max<double>({1.0, static_cast<double>(hi_x - lo_x), static_cast<double>(hi_y - lo_y)});
  const double pad = span * 0.15;
  const double x0 = static_cast<double>(lo_x) - pad, x1 = static_cast<double>(hi_x) + pad;
  const double y0 = static_cast<double>(lo_y) - pad, y1 = static_cast<double>(hi_y) + pad;
  const double size = 800.0;
  const double scale = size / std::max(x1 - x0, y1 - y0);
  auto sx = [&](Coord x) {
    const double v = x == kNegInf ? x0 : x == kPosInf ? x1 : static_cast<double>(x);
    return (std::clamp(v, x0, x1) - x0) * scale;
  };
  auto sy = [&](Coord y) {
    const double v = y == kNegInf ? y0 : y == kPosInf ? y1 : static_cast<double>(y);
    return (y1 - std::clamp(v, y0, y1)) * scale;
  };

  const double width = (x1 - x0) * scale, height = (y1 - y0) * scale;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  const auto depths = final_depths(index);
  for (std::size_t i = 0; i < index.cell_count(); ++i) {
    const auto& cell = index.cells()[i];
    out << "<polygon fill=\"none\" stroke=\"#3060a0\" stroke-width=\"1\" points=\"";
    for (const auto& v : cell.boundary()) out << sx(v.x) << ',' << sy(v.y) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << sx(cell.bx) - 4 << "\" y=\"" << sy(cell.by) + 12
        << "\" font-size=\"10\" text-anchor=\"end\" fill=\"#a03030\">" << depths[i] << "</text>\n";
  }
  for (const auto& p : index.points())
    out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"black\"/>\n";
  out << "</svg>\n";
}

}  // namespace sqrange
