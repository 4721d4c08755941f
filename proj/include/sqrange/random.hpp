#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "sqrange/geometry.hpp"

namespace sqrange {

/// Seeded source whose output is identical on every platform (the standard
/// distributions are implementation-defined, the engine is not).
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty draw range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do v = engine_(); while (v >= limit);
    return v % bound;
  }

  /// Uniform in [lo, hi].
  Coord between(Coord lo, Coord hi) {
    return lo + static_cast<Coord>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// n points with coordinates in [0, range), ids 0..n-1, no two sharing an x,
/// a y, an x + y or an x - y value.
inline std::vector<Point> random_general_position(std::size_t n, Coord range, DeterministicRng& rng) {
  if (range <= 0 || static_cast<std::uint64_t>(range) < n)
    throw std::invalid_argument("coordinate range too small for " + std::to_string(n) +
                                " points in general position");
  std::unordered_set<Coord> xs, ys, sums, diffs;
  std::vector<Point> out;
  out.reserve(n);
  std::size_t attempts = 0;
  const std::size_t max_attempts = 1000 * n + 1000;
  while (out.size() < n) {
    if (++attempts > max_attempts)
      throw std::invalid_argument("coordinate range too small: rejection sampling gave up");
    const Coord x = rng.between(0, range - 1), y = rng.between(0, range - 1);
    if (xs.count(x) || ys.count(y) || sums.count(x + y) || diffs.count(x - y)) continue;
    xs.insert(x);
    ys.insert(y);
    sums.insert(x + y);
    diffs.insert(x - y);
    out.push_back({x, y, static_cast<PointId>(out.size())});
  }
  return out;
}

inline std::vector<Point> random_general_position(std::size_t n, Coord range, std::uint64_t seed) {
  DeterministicRng rng(seed);
  return random_general_position(n, range, rng);
}

}  // namespace sqrange
