#include "guardgrid/geometry.hpp"

#include <cmath>

#include "guardgrid/errors.hpp"

namespace gg {

Point::Point(Scalar x, Scalar y) : x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
  ax_ = x_.get_d();
  ay_ = y_.get_d();
}

Point operator+(const Point& a, const Point& b) { return Point(a.x_ + b.x_, a.y_ + b.y_); }
Point operator-(const Point& a, const Point& b) { return Point(a.x_ - b.x_, a.y_ - b.y_); }
Point operator*(const Scalar& k, const Point& a) { return Point(k * a.x_, k * a.y_); }

int lex_compare(const Point& a, const Point& b) {
  int c = compare(a.x(), a.approx_x(), b.x(), b.approx_x());
  if (c != 0) return c;
  return compare(a.y(), a.approx_y(), b.y(), b.approx_y());
}

Scalar cross(const Point& u, const Point& v) { return u.x() * v.y() - u.y() * v.x(); }
Scalar dot(const Point& u, const Point& v) { return u.x() * v.x() + u.y() * v.y(); }
Point perp(const Point& v) { return Point(-v.y(), v.x()); }
Point midpoint(const Point& a, const Point& b) {
  return Point((a.x() + b.x()) / 2, (a.y() + b.y()) / 2);
}

DirectedLine::DirectedLine(Point from, Point to) : from_(std::move(from)), to_(std::move(to)) {
  if (from_ == to_) throw Error(ErrorCode::kInvalidArgument, "line through a single point");
}

Segment::Segment(Point a, Point b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_ == b_) throw Error(ErrorCode::kInvalidArgument, "degenerate segment");
}

Ray::Ray(Point apex, Point through) : apex_(std::move(apex)), through_(std::move(through)) {
  if (apex_ == through_) throw Error(ErrorCode::kInvalidArgument, "degenerate ray");
}

namespace {

Ray make_first(const Point& apex, const Point& a, const Point& b) {
  if (apex == a || apex == b) throw Error(ErrorCode::kDegenerateCone, "cone ray through apex");
  int o = orient(apex, a, b);
  if (o == 0) throw Error(ErrorCode::kDegenerateCone, "cone rays are collinear");
  return o > 0 ? Ray(apex, a) : Ray(apex, b);
}

Ray make_second(const Point& apex, const Point& a, const Point& b) {
  return orient(apex, a, b) > 0 ? Ray(apex, b) : Ray(apex, a);
}

}  // namespace

Cone::Cone(Point apex, Point through_first, Point through_second)
    : apex_(apex),
      first_(make_first(apex, through_first, through_second)),
      second_(make_second(apex, through_first, through_second)) {}

int orient_dir(const Point& u, const Point& v) {
  double d = u.approx_x() * v.approx_y() - u.approx_y() * v.approx_x();
  double bound =
      1e-13 * (std::fabs(u.approx_x() * v.approx_y()) + std::fabs(u.approx_y() * v.approx_x()));
  if (std::isfinite(d) && std::fabs(d) > bound && bound > 1e-250) return d > 0 ? 1 : -1;
  return sgn(cross(u, v));
}

int orient(const Point& p, const Point& q, const Point& r) {
  double qx = q.approx_x() - p.approx_x(), qy = q.approx_y() - p.approx_y();
  double rx = r.approx_x() - p.approx_x(), ry = r.approx_y() - p.approx_y();
  double d = qx * ry - qy * rx;
  double mag = (std::fabs(q.approx_x()) + std::fabs(p.approx_x())) *
                   (std::fabs(r.approx_y()) + std::fabs(p.approx_y())) +
               (std::fabs(q.approx_y()) + std::fabs(p.approx_y())) *
                   (std::fabs(r.approx_x()) + std::fabs(p.approx_x()));
  if (std::isfinite(d) && std::fabs(d) > 1e-13 * mag && mag > 1e-250) return d > 0 ? 1 : -1;
  return sgn((q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x()));
}

Scalar dist_sq(const Point& p, const Point& q) {
  Scalar dx = p.x() - q.x(), dy = p.y() - q.y();
  return dx * dx + dy * dy;
}

Scalar dist_sq_point_line(const Point& v, const DirectedLine& line) {
  Point d = line.direction();
  Scalar c = cross(d, v - line.from());
  return c * c / dot(d, d);
}

Point project_onto_line(const Point& v, const DirectedLine& line) {
  Point d = line.direction();
  Scalar t = dot(v - line.from(), d) / dot(d, d);
  return line.from() + t * d;
}

LineIntersection line_intersection(const DirectedLine& l1, const DirectedLine& l2) {
  Point d1 = l1.direction(), d2 = l2.direction();
  Scalar den = cross(d1, d2);
  if (den == 0) {
    if (orient(l1.from(), l1.to(), l2.from()) == 0) return Identical{};
    return Parallel{};
  }
  Scalar t = cross(l2.from() - l1.from(), d2) / den;
  return l1.from() + t * d1;
}

std::strong_ordering tan_angle_between_cmp(const DirectedLine& l1, const DirectedLine& l2,
                                           const Scalar& threshold) {
  Point d1 = l1.direction(), d2 = l2.direction();
  Scalar c = abs(cross(d1, d2));
  if (c == 0) throw Error(ErrorCode::kIdenticalDirection, "lines have the same direction");
  Scalar d = abs(dot(d1, d2));
  if (d == 0) return std::strong_ordering::greater;
  Scalar rhs = threshold * d;
  if (c < rhs) return std::strong_ordering::less;
  if (c > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool point_in_cone(const Point& p, const Cone& c) {
  return orient(c.apex(), c.first().through(), p) >= 0 &&
         orient(c.apex(), p, c.second().through()) >= 0;
}

bool point_in_open_cone(const Point& p, const Cone& c) {
  return orient(c.apex(), c.first().through(), p) > 0 &&
         orient(c.apex(), p, c.second().through()) > 0;
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (orient(a, b, p) != 0) return false;
  int ca = lex_compare(p, a), cb = lex_compare(p, b);
  return ca == 0 || cb == 0 || ca != cb;
}

SegmentHit intersect_segments(const Point& a, const Point& b, const Point& c, const Point& d) {
  // Cheap bounding-box rejection on the double approximations.
  auto lo = [](double u, double v) { return std::min(u, v); };
  auto hi = [](double u, double v) { return std::max(u, v); };
  auto slack = [](double u, double v) { return 1e-12 * (std::fabs(u) + std::fabs(v) + 1e-300); };
  double ax = a.approx_x(), bx = b.approx_x(), cx = c.approx_x(), dx = d.approx_x();
  double ay = a.approx_y(), by = b.approx_y(), cy = c.approx_y(), dy = d.approx_y();
  if (hi(ax, bx) + slack(ax, bx) < lo(cx, dx) - slack(cx, dx) ||
      hi(cx, dx) + slack(cx, dx) < lo(ax, bx) - slack(ax, bx) ||
      hi(ay, by) + slack(ay, by) < lo(cy, dy) - slack(cy, dy) ||
      hi(cy, dy) + slack(cy, dy) < lo(ay, by) - slack(ay, by))
    return {};

  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  if (o1 == 0 && o2 == 0) {
    const Point* s0 = &a;
    const Point* s1 = &b;
    if (lex_compare(*s1, *s0) < 0) std::swap(s0, s1);
    const Point* t0 = &c;
    const Point* t1 = &d;
    if (lex_compare(*t1, *t0) < 0) std::swap(t0, t1);
    const Point& from = lex_compare(*s0, *t0) >= 0 ? *s0 : *t0;
    const Point& to = lex_compare(*s1, *t1) <= 0 ? *s1 : *t1;
    int k = lex_compare(from, to);
    if (k > 0) return {};
    if (k == 0) return {SegmentHit::Kind::kPoint, from, {}};
    return {SegmentHit::Kind::kOverlap, from, to};
  }
  if (o1 * o2 > 0) return {};
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o3 * o4 > 0) return {};
  if (o1 == 0) return {SegmentHit::Kind::kPoint, c, {}};
  if (o2 == 0) return {SegmentHit::Kind::kPoint, d, {}};
  if (o3 == 0) return {SegmentHit::Kind::kPoint, a, {}};
  if (o4 == 0) return {SegmentHit::Kind::kPoint, b, {}};
  Point r = b - a, s = d - c;
  Scalar t = cross(c - a, s) / cross(r, s);
  return {SegmentHit::Kind::kPoint, a + t * r, {}};
}

std::optional<Scalar> ray_segment_param(const Point& origin, const Point& dir, const Point& a,
                                        const Point& b) {
  Point e = b - a;
  Scalar den = cross(dir, e);
  if (den == 0) return std::nullopt;
  Point w = a - origin;
  Scalar t = cross(w, e) / den;
  if (t < 0) return std::nullopt;
  Scalar u = cross(w, dir) / den;
  if (u < 0 || u > 1) return std::nullopt;
  return t;
}

namespace {
int half_plane(const Point& u) {
  int sy = sgn(u.y());
  if (sy > 0 || (sy == 0 && sgn(u.x()) > 0)) return 0;
  return 1;
}
}  // namespace

int angle_compare(const Point& u, const Point& v) {
  int hu = half_plane(u), hv = half_plane(v);
  if (hu != hv) return hu < hv ? -1 : 1;
  int o = orient_dir(u, v);
  return o > 0 ? -1 : (o < 0 ? 1 : 0);
}

Scalar twice_signed_area(std::span<const Point> poly) {
  Scalar a = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return a;
}

std::vector<Point> clip_left_of(std::span<const Point> poly, const Point& a, const Point& b) {
  std::vector<Point> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    int op = orient(a, b, p), oq = orient(a, b, q);
    if (op >= 0) out.push_back(p);
    if ((op > 0 && oq < 0) || (op < 0 && oq > 0)) {
      Point r = q - p;
      Scalar t = cross(a - p, b - a) / cross(r, b - a);
      out.push_back(p + t * r);
    }
  }
  return out;
}

std::vector<Point> simplify_ring(std::vector<Point> ring) {
  bool changed = true;
  while (changed && ring.size() >= 3) {
    changed = false;
    std::vector<Point> out;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& prev = out.empty() ? ring[(i + n - 1) % n] : out.back();
      const Point& cur = ring[i];
      const Point& next = ring[(i + 1) % n];
      if (cur == prev || (cur != next && on_segment(cur, prev, next))) {
        changed = true;
        continue;
      }
      out.push_back(cur);
    }
    if (!out.empty() && out.size() > 1 && out.front() == out.back()) {
      out.pop_back();
      changed = true;
    }
    ring = std::move(out);
  }
  return ring;
}

Location ring_locate(std::span<const Point> ring, const Point& p) {
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    int ya = compare(a.y(), a.approx_y(), p.y(), p.approx_y());
    int yb = compare(b.y(), b.approx_y(), p.y(), p.approx_y());
    if (ya > 0 && yb > 0) continue;
    if (ya < 0 && yb < 0) continue;
    int o = orient(a, b, p);
    if (o == 0 && on_segment(p, a, b)) return Location::kBoundary;
    if ((ya > 0) != (yb > 0)) {
      bool upward = yb > 0;
      if ((upward && o > 0) || (!upward && o < 0)) inside = !inside;
    }
  }
  return inside ? Location::kInside : Location::kOutside;
}

}  // namespace gg
