#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqrange/geometry.hpp"

namespace sqrange::io {

/// Malformed file contents.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what) {}
};

/// Point file:
///
///   sqrange-points 1
///   n <count>
///   weighted <0|1>
///   <id> <x> <y> [<weight>]     one record per point, ids 0..n-1
struct PointSet {
  std::vector<Point> points;
  std::vector<double> weights;  // empty unless weighted
  bool weighted = false;

  std::vector<WeightedPoint<double>> weighted_points() const {
    std::vector<WeightedPoint<double>> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out.push_back({points[i], weights.at(i)});
    return out;
  }
};

inline std::string format_weight(double w) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, w);
  if (ec != std::errc{}) throw std::runtime_error("cannot format weight");
  return std::string(buf, end);
}

inline void write_points(std::ostream& out, const PointSet& s) {
  out << "sqrange-points 1\n";
  out << "n " << s.points.size() << "\n";
  out << "weighted " << (s.weighted ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto& p = s.points[i];
    out << p.id << ' ' << p.x << ' ' << p.y;
    if (s.weighted) out << ' ' << format_weight(s.weights[i]);
    out << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

template <class T>
T parse_integer(const std::string& tok, std::size_t line) {
  T v{};
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || end != tok.data() + tok.size())
    throw FormatError(line, "expected an integer, got '" + tok + "'");
  return v;
}

inline double parse_double(const std::string& tok, std::size_t line) {
  double v{};
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || end != tok.data() + tok.size())
    throw FormatError(line, "expected a number, got '" + tok + "'");
  return v;
}

// Next non-empty, non-comment line split into tokens.
inline std::optional<std::vector<std::string>> next_record(std::istream& in, std::size_t& line) {
  for (std::string text; std::getline(in, text);) {
    ++line;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    auto toks = split(text);
    if (!toks.empty()) return toks;
  }
  return std::nullopt;
}

}  // namespace detail

inline PointSet read_points(std::istream& in) {
  std::size_t line = 0;
  auto header = detail::next_record(in, line);
  if (!header || *header != std::vector<std::string>{"sqrange-points", "1"})
    throw FormatError(line, "expected header 'sqrange-points 1'");
  auto count = detail::next_record(in, line);
  if (!count || count->size() != 2 || (*count)[0] != "n") throw FormatError(line, "expected 'n <count>'");
  const auto n = detail::parse_integer<std::size_t>((*count)[1], line);
  auto flag = detail::next_record(in, line);
  if (!flag || flag->size() != 2 || (*flag)[0] != "weighted" || ((*flag)[1] != "0" && (*flag)[1] != "1"))
    throw FormatError(line, "expected 'weighted 0' or 'weighted 1'");

  PointSet s;
  s.weighted = (*flag)[1] == "1";
  s.points.resize(n);
  if (s.weighted) s.weights.resize(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    auto rec = detail::next_record(in, line);
    if (!rec) throw FormatError(line, "expected " + std::to_string(n) + " point records");
    if (rec->size() != (s.weighted ? 4u : 3u)) throw FormatError(line, "wrong number of fields");
    const auto id = detail::parse_integer<PointId>((*rec)[0], line);
    if (id >= n || seen[id]) throw FormatError(line, "ids must be 0..n-1 without repeats");
    seen[id] = true;
    s.points[id] = {detail::parse_integer<Coord>((*rec)[1], line),
                    detail::parse_integer<Coord>((*rec)[2], line), id};
    if (s.weighted) s.weights[id] = detail::parse_double((*rec)[3], line);
  }
  if (detail::next_record(in, line)) throw FormatError(line, "unexpected data after the last record");
  return s;
}

enum class QueryKind { kClosestC, kAnchoredSquare, kSparseReport, kRcp, kRmw };

inline const char* to_string(QueryKind k) {
  switch (k) {
    case QueryKind::kClosestC: return "closest_c";
    case QueryKind::kAnchoredSquare: return "anchored_square";
    case QueryKind::kSparseReport: return "sparse_report";
    case QueryKind::kRcp: return "rcp";
    case QueryKind::kRmw: return "rmw";
  }
  return "?";
}

enum class RmwMethod { kBaseline, kFromClosestPair };

/// One workload line:
///
///   closest_c <x> <y> <c>
///   anchored_square <x> <y> <c> <orientation>
///   sparse_report <ax> <ay> <side> <c>
///   rcp <ax> <ay> <side>
///   rmw <ax> <ay> <side> [baseline|from-cp]
struct Query {
  QueryKind kind = QueryKind::kClosestC;
  Point point;             // closest_c, anchored_square
  Square square;           // sparse_report, rcp, rmw
  std::size_t c = 0;       // closest_c, anchored_square, sparse_report
  Orientation orientation = Orientation::kBottomLeft;
  RmwMethod method = RmwMethod::kBaseline;
};

inline std::string format_query(const Query& q) {
  std::ostringstream out;
  out << to_string(q.kind);
  switch (q.kind) {
    case QueryKind::kClosestC: out << ' ' << q.point.x << ' ' << q.point.y << ' ' << q.c; break;
    case QueryKind::kAnchoredSquare:
      out << ' ' << q.point.x << ' ' << q.point.y << ' ' << q.c << ' ' << to_string(q.orientation);
      break;
    case QueryKind::kSparseReport:
      out << ' ' << q.square.ax() << ' ' << q.square.ay() << ' ' << q.square.side() << ' ' << q.c;
      break;
    case QueryKind::kRcp: out << ' ' << q.square.ax() << ' ' << q.square.ay() << ' ' << q.square.side(); break;
    case QueryKind::kRmw:
      out << ' ' << q.square.ax() << ' ' << q.square.ay() << ' ' << q.square.side() << ' '
          << (q.method == RmwMethod::kBaseline ? "baseline" : "from-cp");
      break;
  }
  return out.str();
}

inline std::vector<Query> read_workload(std::istream& in) {
  std::vector<Query> out;
  std::size_t line = 0;
  while (auto rec = detail::next_record(in, line)) {
    const auto& t = *rec;
    auto need = [&](std::size_t lo, std::size_t hi) {
      if (t.size() < lo || t.size() > hi) throw FormatError(line, "wrong number of fields for " + t[0]);
    };
    auto coord = [&](std::size_t i) { return detail::parse_integer<Coord>(t[i], line); };
    auto count = [&](std::size_t i) { return detail::parse_integer<std::size_t>(t[i], line); };
    auto square = [&]() {
      const Coord side = coord(3);
      if (side <= 0) throw FormatError(line, "square side must be positive");
      return Square(coord(1), coord(2), side);
    };
    Query q;
    if (t[0] == "sqrange-workload") {
      need(2, 2);
      if (t[1] != "1") throw FormatError(line, "unsupported workload version");
      continue;
    } else if (t[0] == "closest_c") {
      need(4, 4);
      q.kind = QueryKind::kClosestC;
      q.point = {coord(1), coord(2)};
      q.c = count(3);
      if (q.c == 0) throw FormatError(line, "c must be at least 1");
    } else if (t[0] == "anchored_square") {
      need(5, 5);
      q.kind = QueryKind::kAnchoredSquare;
      q.point = {coord(1), coord(2)};
      q.c = count(3);
      if (q.c == 0) throw FormatError(line, "c must be at least 1");
      const auto o = parse_orientation(t[4]);
      if (!o) throw FormatError(line, "unknown orientation '" + t[4] + "'");
      q.orientation = *o;
    } else if (t[0] == "sparse_report") {
      need(5, 5);
      q.kind = QueryKind::kSparseReport;
      q.square = square();
      q.c = count(4);
    } else if (t[0] == "rcp") {
      need(4, 4);
      q.kind = QueryKind::kRcp;
      q.square = square();
    } else if (t[0] == "rmw") {
      need(4, 5);
      q.kind = QueryKind::kRmw;
      q.square = square();
      if (t.size() == 5) {
        if (t[4] == "baseline") q.method = RmwMethod::kBaseline;
        else if (t[4] == "from-cp") q.method = RmwMethod::kFromClosestPair;
        else throw FormatError(line, "unknown rmw method '" + t[4] + "'");
      }
    } else {
      throw FormatError(line, "unknown query kind '" + t[0] + "'");
    }
    out.push_back(q);
  }
  return out;
}

inline void write_workload(std::ostream& out, const std::vector<Query>& queries) {
  out << "sqrange-workload 1\n";
  for (const auto& q : queries) out << format_query(q) << '\n';
}

}  // namespace sqrange::io
