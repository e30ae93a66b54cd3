#pragma once

// Exact planar kernel. Every predicate is decided on rationals; doubles are
// only used as a filter in front of the exact evaluation.

#include <compare>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "guardgrid/scalar.hpp"

namespace gg {

class Point {
 public:
  Point() = default;
  Point(Scalar x, Scalar y);
  Point(long x, long y) : Point(Scalar(x), Scalar(y)) {}

  const Scalar& x() const { return x_; }
  const Scalar& y() const { return y_; }
  double approx_x() const { return ax_; }
  double approx_y() const { return ay_; }

  friend bool operator==(const Point& a, const Point& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator*(const Scalar& k, const Point& a);

 private:
  Scalar x_, y_;
  double ax_ = 0, ay_ = 0;
};

/// Lexicographic order on (x, y).
int lex_compare(const Point& a, const Point& b);
struct LexLess {
  bool operator()(const Point& a, const Point& b) const { return lex_compare(a, b) < 0; }
};

Scalar cross(const Point& u, const Point& v);
Scalar dot(const Point& u, const Point& v);
/// Counterclockwise perpendicular (-y, x).
Point perp(const Point& v);
Point midpoint(const Point& a, const Point& b);

class DirectedLine {
 public:
  DirectedLine(Point from, Point to);
  const Point& from() const { return from_; }
  const Point& to() const { return to_; }
  Point direction() const { return to_ - from_; }

 private:
  Point from_, to_;
};

class Segment {
 public:
  Segment(Point a, Point b);
  const Point& a() const { return a_; }
  const Point& b() const { return b_; }

 private:
  Point a_, b_;
};

class Ray {
 public:
  Ray(Point apex, Point through);
  const Point& apex() const { return apex_; }
  const Point& through() const { return through_; }
  Point direction() const { return through_ - apex_; }

 private:
  Point apex_, through_;
};

/// Closed convex cone (opening angle < pi) spanned counterclockwise from
/// `first` to `second`.
class Cone {
 public:
  Cone(Point apex, Point through_first, Point through_second);
  const Point& apex() const { return apex_; }
  const Ray& first() const { return first_; }
  const Ray& second() const { return second_; }

 private:
  Point apex_;
  Ray first_, second_;
};

/// Sign of (q - p) x (r - p).
int orient(const Point& p, const Point& q, const Point& r);
int orient_dir(const Point& u, const Point& v);

Scalar dist_sq(const Point& p, const Point& q);
Scalar dist_sq_point_line(const Point& v, const DirectedLine& line);

/// Point on the line (from the side of the direction) or the projection.
Point project_onto_line(const Point& v, const DirectedLine& line);

struct Parallel {};
struct Identical {};
using LineIntersection = std::variant<Point, Parallel, Identical>;
LineIntersection line_intersection(const DirectedLine& l1, const DirectedLine& l2);

/// Compares tan of the smaller angle between the lines with `threshold`
/// using |cross| / |dot|; perpendicular lines have infinite tangent.
/// Throws Error(kIdenticalDirection) for parallel lines.
std::strong_ordering tan_angle_between_cmp(const DirectedLine& l1, const DirectedLine& l2,
                                           const Scalar& threshold);

bool point_in_cone(const Point& p, const Cone& c);
bool point_in_open_cone(const Point& p, const Cone& c);

/// p lies on the closed segment [a, b].
bool on_segment(const Point& p, const Point& a, const Point& b);

struct SegmentHit {
  enum class Kind { kNone, kPoint, kOverlap } kind = Kind::kNone;
  Point first;   // kPoint: the point; kOverlap: one end of the shared piece
  Point second;  // kOverlap: other end
};
SegmentHit intersect_segments(const Point& a, const Point& b, const Point& c, const Point& d);

/// Parameter t >= 0 with origin + t * dir on segment [a, b]; nullopt when the
/// ray misses it or runs along it.
std::optional<Scalar> ray_segment_param(const Point& origin, const Point& dir, const Point& a,
                                        const Point& b);

/// Orders direction vectors by angle in [0, 2*pi) starting at +x.
int angle_compare(const Point& u, const Point& v);

/// Twice the signed area (positive for counterclockwise).
Scalar twice_signed_area(std::span<const Point> poly);

/// Keeps the part of `poly` where orient(a, b, .) >= 0 (left of a->b).
std::vector<Point> clip_left_of(std::span<const Point> poly, const Point& a, const Point& b);

enum class Location { kInside, kBoundary, kOutside };

/// Point location against a simple ring given in either orientation.
Location ring_locate(std::span<const Point> ring, const Point& p);

/// Drops repeated and collinear-middle vertices (cyclic).
std::vector<Point> simplify_ring(std::vector<Point> ring);

}  // namespace gg
