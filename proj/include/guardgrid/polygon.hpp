#pragma once

#include <array>
#include <vector>

#include "guardgrid/geometry.hpp"

namespace gg {

struct Extension {
  DirectedLine line;
  std::array<int, 2> defining_vertices;
};

struct OppositeReflexPair {
  int r1 = 0;
  int r2 = 0;
  Extension line;
};

/// Simple polygon with positive integer coordinates, counterclockwise.
class PolygonModel {
 public:
  const std::vector<Point>& vertices() const { return vertices_; }
  int n() const { return static_cast<int>(vertices_.size()); }
  const Point& vertex(int i) const { return vertices_[static_cast<std::size_t>(wrap(i))]; }
  int wrap(int i) const { return ((i % n()) + n()) % n(); }

  const Integer& M() const { return m_; }
  const Integer& L() const { return l_; }
  /// L as a rational, for exponent arithmetic.
  Scalar l_scalar() const { return Scalar(l_); }

  double min_x() const { return min_x_; }
  double max_x() const { return max_x_; }
  double min_y() const { return min_y_; }
  double max_y() const { return max_y_; }

 private:
  friend PolygonModel load_polygon(std::vector<Point> vertices);
  std::vector<Point> vertices_;
  Integer m_, l_;
  double min_x_ = 0, max_x_ = 0, min_y_ = 0, max_y_ = 0;
};

/// Validates and normalizes. Rational input is scaled by the LCM of the
/// denominators. Throws Error with kTooFewVertices, kDuplicateVertex,
/// kNonPositiveCoordinates, kCollinearTripleConsecutive or kNotSimple.
PolygonModel load_polygon(std::vector<Point> vertices);

std::vector<int> reflex_vertices(const PolygonModel& m);
bool is_reflex(const PolygonModel& m, int i);

/// Reflex pairs whose incident edges lie strictly on opposite sides of their
/// common line and whose connecting segment stays in P. r1 < r2.
std::vector<OppositeReflexPair> opposite_reflex_pairs(const PolygonModel& m);

/// One extension per distinct line through two vertices. The defining pair
/// is the two smallest vertex indices on that line.
std::vector<Extension> extensions(const PolygonModel& m);

struct GeneralPositionReport {
  std::vector<std::array<int, 3>> collinear_triples;
  struct Concurrency {
    Point point;
    std::vector<int> extensions;  // indices into extensions(m)
  };
  std::vector<Concurrency> concurrent_extensions;
  bool ok() const { return collinear_triples.empty() && concurrent_extensions.empty(); }
};
GeneralPositionReport check_general_position(const PolygonModel& m);

Location locate(const PolygonModel& m, const Point& p);
/// Closed membership (boundary counts as inside).
inline bool contains(const PolygonModel& m, const Point& p) {
  return locate(m, p) != Location::kOutside;
}

/// seg(a, b) is contained in the closed polygon.
bool segment_in_polygon(const PolygonModel& m, const Point& a, const Point& b);

/// Index of the vertex equal to p, or -1.
int vertex_index(const PolygonModel& m, const Point& p);

}  // namespace gg
