#pragma once

#include <array>
#include <vector>

#include "guardgrid/polygon.hpp"

namespace gg {

struct VisibilityPolygon {
  Point viewpoint;
  std::vector<Point> boundary;    // counterclockwise, simplified
  std::vector<int> window_edges;  // edge i runs boundary[i] -> boundary[i+1]
};

struct StarTriangle {
  Point apex;
  Point u, v;  // visible vertices on the bounding rays (or the triangle corner if none)
  std::array<Point, 3> triangle;
};

struct GridCone {
  Point apex;
  Point u, v;
  /// Maximal visible pieces of seg(u, v), ordered from u to v.
  std::vector<std::array<Point, 2>> visible;
  bool empty() const { return visible.empty(); }
  /// p lies on some ray from the apex through a visible piece.
  bool contains(const Point& p) const;
};

/// Closed visibility: seg(x, y) inside closed P. Throws kPointOutsidePolygon.
bool sees(const PolygonModel& m, const Point& x, const Point& y);

VisibilityPolygon visibility_polygon(const PolygonModel& m, const Point& x);

/// Fan decomposition of Vis(x) split at directions of visible vertices.
std::vector<StarTriangle> star_triangles(const PolygonModel& m, const Point& x);

/// Convex cone bounded by ray(x, u) and ray(x, v). Throws kDegenerateCone.
Cone cone_of(const Point& x, const Point& u, const Point& v);

GridCone grid_cone(const PolygonModel& m, const Point& g, const Point& u, const Point& v);

/// Closed membership in Vis(x) as a region.
bool in_visibility_polygon(const VisibilityPolygon& vis, const Point& p);

}  // namespace gg
