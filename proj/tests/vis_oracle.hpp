#pragma once

// Independent O(n^2) visibility oracle used by tests. Each polygon edge is
// cut at the rays from x through every vertex; a piece is visible iff its
// midpoint is, and Vis(x) is the fan of triangles over the visible pieces.

#include <algorithm>
#include <array>
#include <vector>

#include "guardgrid/visibility.hpp"

namespace gg::oracle {

struct Fan {
  std::vector<std::array<Point, 3>> triangles;  // counterclockwise
  Scalar twice_area = 0;
};

inline Fan naive_visibility(const PolygonModel& m, const Point& x) {
  Fan fan;
  for (int i = 0; i < m.n(); ++i) {
    const Point& a = m.vertex(i);
    const Point& b = m.vertex(i + 1);
    Point d = b - a;
    std::vector<Scalar> ts = {Scalar(0), Scalar(1)};
    for (const Point& w : m.vertices()) {
      if (w == x) continue;
      auto hit = line_intersection(DirectedLine(x, w), DirectedLine(a, b));
      if (auto* p = std::get_if<Point>(&hit)) {
        Scalar t = dot(*p - a, d) / dot(d, d);
        if (t > 0 && t < 1) ts.push_back(t);
      }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      Point p = a + ts[k] * d, q = a + ts[k + 1] * d;
      if (orient(x, p, q) <= 0) continue;
      Point mid = midpoint(p, q);
      if (!segment_in_polygon(m, x, mid)) continue;
      fan.triangles.push_back({x, p, q});
      fan.twice_area += cross(p - x, q - x);
    }
  }
  return fan;
}

inline Scalar twice_area_clipped(const std::vector<Point>& ring, const std::array<Point, 3>& t) {
  std::vector<Point> poly = ring;
  for (int k = 0; k < 3 && !poly.empty(); ++k) poly = clip_left_of(poly, t[k], t[(k + 1) % 3]);
  if (poly.size() < 3) return 0;
  return twice_signed_area(poly);
}

/// Twice the area of the symmetric difference between a ring and the fan.
inline Scalar twice_symmetric_difference(const std::vector<Point>& ring, const Fan& fan) {
  Scalar common = 0;
  for (const auto& t : fan.triangles) common += twice_area_clipped(ring, t);
  return twice_signed_area(ring) + fan.twice_area - 2 * common;
}

}  // namespace gg::oracle
