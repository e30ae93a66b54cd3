#include "guardgrid/visibility.hpp"

#include <algorithm>
#include <optional>

#include "guardgrid/errors.hpp"

namespace gg {

namespace {

void require_inside(const PolygonModel& m, const Point& p) {
  if (!contains(m, p))
    throw Error(ErrorCode::kPointOutsidePolygon,
                "(" + to_string(p.x()) + ", " + to_string(p.y()) + ") is outside the polygon");
}

// Angular sector between two consecutive event directions around x. Inside
// the open sector no vertex direction occurs, so the first edge hit along
// every interior ray is the same edge.
struct Wedge {
  Point d0, d1;
  bool inside = false;
  int edge = -1;
  Point a, b;  // hits of line(edge) on ray(x, d0) and ray(x, d1)
};

Point on_ray_hit(const Point& x, const Point& d, const Point& ea, const Point& eb) {
  Point e = eb - ea;
  Scalar t = cross(ea - x, e) / cross(d, e);
  return x + t * d;
}

std::vector<Point> event_directions(const PolygonModel& m, const Point& x) {
  std::vector<Point> dirs = {Point(1, 0), Point(0, 1), Point(-1, 0), Point(0, -1)};
  for (const Point& v : m.vertices())
    if (v != x) dirs.push_back(v - x);
  std::sort(dirs.begin(), dirs.end(),
            [](const Point& a, const Point& b) { return angle_compare(a, b) < 0; });
  std::vector<Point> out;
  for (Point& d : dirs)
    if (out.empty() || angle_compare(out.back(), d) != 0) out.push_back(std::move(d));
  if (out.size() > 1 && angle_compare(out.front(), out.back()) == 0) out.pop_back();
  return out;
}

std::vector<Wedge> wedges(const PolygonModel& m, const Point& x) {
  std::vector<Point> dirs = event_directions(m, x);
  const std::size_t k = dirs.size();
  const auto& v = m.vertices();
  const std::size_t n = v.size();
  std::vector<Wedge> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    Wedge& w = out[i];
    w.d0 = dirs[i];
    w.d1 = dirs[(i + 1) % k];
    Point mid = w.d0 + w.d1;
    std::optional<Scalar> best;
    for (std::size_t j = 0; j < n; ++j) {
      auto t = ray_segment_param(x, mid, v[j], v[(j + 1) % n]);
      if (!t || *t <= 0) continue;
      if (!best || *t < *best) {
        best = std::move(t);
        w.edge = static_cast<int>(j);
      }
    }
    if (!best) continue;
    Scalar half = *best / 2;
    if (locate(m, x + half * mid) != Location::kInside) continue;
    w.inside = true;
    const Point& ea = v[static_cast<std::size_t>(w.edge)];
    const Point& eb = v[(static_cast<std::size_t>(w.edge) + 1) % n];
    w.a = on_ray_hit(x, w.d0, ea, eb);
    w.b = on_ray_hit(x, w.d1, ea, eb);
  }
  return out;
}

// Nearest vertex on ray(x, d) that x sees.
std::optional<Point> visible_vertex_on_ray(const PolygonModel& m, const Point& x, const Point& d) {
  std::optional<Point> best;
  Scalar best_t;
  for (const Point& v : m.vertices()) {
    if (v == x) continue;
    Point w = v - x;
    if (orient_dir(d, w) != 0 || dot(d, w) <= 0) continue;
    Scalar t = dot(w, w);
    if (!best || t < best_t) {
      best = v;
      best_t = t;
    }
  }
  if (best && segment_in_polygon(m, x, *best)) return best;
  return std::nullopt;
}

}  // namespace

bool sees(const PolygonModel& m, const Point& x, const Point& y) {
  require_inside(m, x);
  require_inside(m, y);
  return segment_in_polygon(m, x, y);
}

VisibilityPolygon visibility_polygon(const PolygonModel& m, const Point& x) {
  require_inside(m, x);
  std::vector<Wedge> ws = wedges(m, x);
  std::vector<Point> ring;
  for (const Wedge& w : ws) {
    if (w.inside) {
      ring.push_back(w.a);
      ring.push_back(w.b);
    } else {
      ring.push_back(x);
    }
  }
  VisibilityPolygon vis;
  vis.viewpoint = x;
  vis.boundary = simplify_ring(std::move(ring));
  const std::size_t n = vis.boundary.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = vis.boundary[i];
    const Point& q = vis.boundary[(i + 1) % n];
    if (orient(x, p, q) != 0) continue;
    if (locate(m, midpoint(p, q)) == Location::kBoundary) continue;
    vis.window_edges.push_back(static_cast<int>(i));
  }
  return vis;
}

std::vector<StarTriangle> star_triangles(const PolygonModel& m, const Point& x) {
  require_inside(m, x);
  std::vector<Wedge> ws = wedges(m, x);
  const std::size_t k = ws.size();
  std::vector<std::optional<Point>> seen(k);
  for (std::size_t i = 0; i < k; ++i) seen[i] = visible_vertex_on_ray(m, x, ws[i].d0);

  // A split happens at direction i unless wedges i-1 and i continue the same
  // supporting edge with no visible vertex in between.
  auto split_at = [&](std::size_t i) {
    const Wedge& prev = ws[(i + k - 1) % k];
    const Wedge& cur = ws[i];
    return !prev.inside || !cur.inside || prev.edge != cur.edge || seen[i].has_value();
  };
  std::size_t start = k;
  for (std::size_t i = 0; i < k && start == k; ++i)
    if (split_at(i)) start = i;
  if (start == k) start = 0;

  std::vector<StarTriangle> out;
  std::size_t i = 0;
  while (i < k) {
    std::size_t first = (start + i) % k;
    if (!ws[first].inside) {
      ++i;
      continue;
    }
    std::size_t last = first;
    ++i;
    while (i < k && !split_at((start + i) % k)) {
      last = (start + i) % k;
      ++i;
    }
    const Wedge& a = ws[first];
    const Wedge& b = ws[last];
    StarTriangle t;
    t.apex = x;
    t.triangle = {x, a.a, b.b};
    t.u = seen[first] ? *seen[first] : a.a;
    t.v = seen[(last + 1) % k] ? *seen[(last + 1) % k] : b.b;
    out.push_back(std::move(t));
  }
  return out;
}

Cone cone_of(const Point& x, const Point& u, const Point& v) { return Cone(x, u, v); }

bool GridCone::contains(const Point& p) const {
  auto on_ray = [&](const Point& through) {
    return orient(apex, through, p) == 0 && dot(p - apex, through - apex) >= 0;
  };
  for (const auto& piece : visible) {
    const Point& a = piece[0];
    const Point& b = piece[1];
    if (a == apex || b == apex || orient(apex, a, b) == 0) {
      if ((a != apex && on_ray(a)) || (b != apex && on_ray(b)) || p == apex) return true;
      continue;
    }
    if (point_in_cone(p, Cone(apex, a, b))) return true;
  }
  return false;
}

GridCone grid_cone(const PolygonModel& m, const Point& g, const Point& u, const Point& v) {
  require_inside(m, g);
  GridCone cone;
  cone.apex = g;
  cone.u = u;
  cone.v = v;
  if (u == v) return cone;
  Point d = v - u;
  Scalar dd = dot(d, d);
  auto param = [&](const Point& p) -> Scalar { return dot(p - u, d) / dd; };
  std::vector<Scalar> ts = {Scalar(0), Scalar(1)};
  DirectedLine uv(u, v);
  for (const Point& w : m.vertices()) {
    if (w == g) continue;
    auto hit = line_intersection(DirectedLine(g, w), uv);
    if (const Point* p = std::get_if<Point>(&hit)) {
      Scalar t = param(*p);
      if (t > 0 && t < 1) ts.push_back(t);
    }
  }
  const auto& vs = m.vertices();
  for (std::size_t j = 0; j < vs.size(); ++j) {
    SegmentHit h = intersect_segments(u, v, vs[j], vs[(j + 1) % vs.size()]);
    if (h.kind == SegmentHit::Kind::kNone) continue;
    ts.push_back(param(h.first));
    if (h.kind == SegmentHit::Kind::kOverlap) ts.push_back(param(h.second));
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    Point mid = u + ((ts[i] + ts[i + 1]) / 2) * d;
    if (!contains(m, mid) || !segment_in_polygon(m, g, mid)) continue;
    Point a = u + ts[i] * d, b = u + ts[i + 1] * d;
    if (!cone.visible.empty() && cone.visible.back()[1] == a)
      cone.visible.back()[1] = b;
    else
      cone.visible.push_back({a, b});
  }
  return cone;
}

bool in_visibility_polygon(const VisibilityPolygon& vis, const Point& p) {
  if (vis.boundary.size() < 3) return p == vis.viewpoint;
  return ring_locate(vis.boundary, p) != Location::kOutside;
}

}  // namespace gg
