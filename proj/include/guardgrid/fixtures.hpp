#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "guardgrid/polygon.hpp"

namespace gg {

/// Small deterministic generator (splitmix64). Same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

std::vector<Point> comb_vertices(int prongs);
std::vector<Point> channel_vertices();
std::vector<Point> l_shape_vertices();

/// Pinhole polygon used for the refutation example: reflex vertices (10,6)
/// and (11,6) on the line y = 6, a wall at x = 21 holding t = (21,6), and
/// approach points near (5,6).
std::vector<Point> deshpande_vertices();

/// Three gated arms whose pinhole lines all pass through (20,20).
std::vector<Point> hub_vertices();

/// Random simple polygon with n vertices in [1, max_coord]^2, built by 2-opt
/// untangling of a random tour. No three vertices are collinear. With
/// `general_position` the polygon also passes check_general_position.
/// Throws kGenerationBudgetExceeded after `attempts` failed tries.
std::vector<Point> random_polygon(int n, long max_coord, std::uint64_t seed,
                                  bool general_position = false, int attempts = 200);

/// Built-in fixture by name: square, triangle, l-shape, comb3, channel,
/// deshpande, hub. Throws kInvalidArgument for unknown names.
std::vector<Point> fixture_vertices(const std::string& name);
std::vector<std::string> fixture_names();

/// Random rational point strictly inside P with the given denominator.
Point random_interior_point(const PolygonModel& m, Rng& rng, long denominator);

}  // namespace gg
