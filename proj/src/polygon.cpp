#include "guardgrid/polygon.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "guardgrid/errors.hpp"

namespace gg {

namespace {

bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
  return intersect_segments(a, b, c, d).kind != SegmentHit::Kind::kNone;
}

}  // namespace

PolygonModel load_polygon(std::vector<Point> vertices) {
  if (vertices.size() < 3)
    throw Error(ErrorCode::kTooFewVertices, "need at least 3 vertices, got " +
                                                std::to_string(vertices.size()));

  Integer lcm = 1;
  for (const Point& p : vertices) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), p.x().get_den_mpz_t());
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), p.y().get_den_mpz_t());
  }
  if (lcm != 1) {
    Scalar k(lcm);
    for (Point& p : vertices) p = k * p;
  }

  const std::size_t n = vertices.size();
  for (const Point& p : vertices)
    if (p.x() <= 0 || p.y() <= 0)
      throw Error(ErrorCode::kNonPositiveCoordinates,
                  "vertex (" + to_string(p.x()) + ", " + to_string(p.y()) + ")");

  {
    std::vector<Point> sorted = vertices;
    std::sort(sorted.begin(), sorted.end(), LexLess{});
    for (std::size_t i = 1; i < n; ++i)
      if (sorted[i] == sorted[i - 1])
        throw Error(ErrorCode::kDuplicateVertex,
                    "(" + to_string(sorted[i].x()) + ", " + to_string(sorted[i].y()) + ")");
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices[(i + n - 1) % n];
    const Point& b = vertices[i];
    const Point& c = vertices[(i + 1) % n];
    if (orient(a, b, c) == 0)
      throw Error(ErrorCode::kCollinearTripleConsecutive, "at vertex " + std::to_string(i));
  }

  // Non-adjacent edges must be disjoint. Adjacent edges can only overlap if
  // the shared vertex is degenerate, which was rejected above.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_touch(vertices[i], vertices[(i + 1) % n], vertices[j], vertices[(j + 1) % n]))
        throw Error(ErrorCode::kNotSimple,
                    "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }
  }

  if (twice_signed_area(vertices) < 0) std::reverse(vertices.begin(), vertices.end());

  PolygonModel m;
  m.m_ = 0;
  for (const Point& p : vertices) {
    if (p.x() > m.m_) m.m_ = p.x().get_num();
    if (p.y() > m.m_) m.m_ = p.y().get_num();
  }
  m.l_ = 20 * m.m_;
  m.min_x_ = m.max_x_ = vertices[0].approx_x();
  m.min_y_ = m.max_y_ = vertices[0].approx_y();
  for (const Point& p : vertices) {
    m.min_x_ = std::min(m.min_x_, p.approx_x());
    m.max_x_ = std::max(m.max_x_, p.approx_x());
    m.min_y_ = std::min(m.min_y_, p.approx_y());
    m.max_y_ = std::max(m.max_y_, p.approx_y());
  }
  m.vertices_ = std::move(vertices);
  return m;
}

bool is_reflex(const PolygonModel& m, int i) {
  return orient(m.vertex(i - 1), m.vertex(i), m.vertex(i + 1)) < 0;
}

std::vector<int> reflex_vertices(const PolygonModel& m) {
  std::vector<int> out;
  for (int i = 0; i < m.n(); ++i)
    if (is_reflex(m, i)) out.push_back(i);
  return out;
}

Location locate(const PolygonModel& m, const Point& p) {
  if (p.approx_x() < m.min_x() - 1e-9 * (1 + m.max_x()) ||
      p.approx_x() > m.max_x() + 1e-9 * (1 + m.max_x()) ||
      p.approx_y() < m.min_y() - 1e-9 * (1 + m.max_y()) ||
      p.approx_y() > m.max_y() + 1e-9 * (1 + m.max_y()))
    return Location::kOutside;
  return ring_locate(m.vertices(), p);
}

bool segment_in_polygon(const PolygonModel& m, const Point& a, const Point& b) {
  if (!contains(m, a) || !contains(m, b)) return false;
  if (a == b) return true;
  const auto& v = m.vertices();
  const std::size_t n = v.size();
  Point d = b - a;
  Scalar dd = dot(d, d);
  std::vector<Scalar> ts;
  ts.reserve(8);
  auto param = [&](const Point& p) -> Scalar { return dot(p - a, d) / dd; };
  for (std::size_t i = 0; i < n; ++i) {
    SegmentHit h = intersect_segments(a, b, v[i], v[(i + 1) % n]);
    if (h.kind == SegmentHit::Kind::kNone) continue;
    ts.push_back(param(h.first));
    if (h.kind == SegmentHit::Kind::kOverlap) ts.push_back(param(h.second));
  }
  ts.push_back(0);
  ts.push_back(1);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    Scalar t = (ts[i] + ts[i + 1]) / 2;
    if (!contains(m, a + t * d)) return false;
  }
  return true;
}

int vertex_index(const PolygonModel& m, const Point& p) {
  for (int i = 0; i < m.n(); ++i)
    if (m.vertex(i) == p) return i;
  return -1;
}

std::vector<OppositeReflexPair> opposite_reflex_pairs(const PolygonModel& m) {
  std::vector<OppositeReflexPair> out;
  std::vector<int> reflex = reflex_vertices(m);
  for (std::size_t a = 0; a < reflex.size(); ++a) {
    for (std::size_t b = a + 1; b < reflex.size(); ++b) {
      int i = reflex[a], j = reflex[b];
      const Point& ri = m.vertex(i);
      const Point& rj = m.vertex(j);
      int o1 = orient(ri, rj, m.vertex(i - 1)), o2 = orient(ri, rj, m.vertex(i + 1));
      int o3 = orient(ri, rj, m.vertex(j - 1)), o4 = orient(ri, rj, m.vertex(j + 1));
      if (o1 == 0 || o1 != o2 || o3 != o4 || o3 != -o1) continue;
      if (!segment_in_polygon(m, ri, rj)) continue;
      out.push_back({i, j, Extension{DirectedLine(ri, rj), {i, j}}});
    }
  }
  return out;
}

std::vector<Extension> extensions(const PolygonModel& m) {
  std::vector<Extension> out;
  const int n = m.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool canonical = true;
      for (int k = 0; k < j && canonical; ++k) {
        if (k == i) continue;
        if (orient(m.vertex(i), m.vertex(j), m.vertex(k)) == 0) canonical = false;
      }
      if (canonical) out.push_back({DirectedLine(m.vertex(i), m.vertex(j)), {i, j}});
    }
  }
  return out;
}

GeneralPositionReport check_general_position(const PolygonModel& m) {
  GeneralPositionReport report;
  const int n = m.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (orient(m.vertex(i), m.vertex(j), m.vertex(k)) == 0)
          report.collinear_triples.push_back({i, j, k});

  std::vector<Extension> ext = extensions(m);
  std::map<Point, std::set<int>, LexLess> meets;
  for (std::size_t a = 0; a < ext.size(); ++a) {
    for (std::size_t b = a + 1; b < ext.size(); ++b) {
      LineIntersection li = line_intersection(ext[a].line, ext[b].line);
      const Point* p = std::get_if<Point>(&li);
      if (!p) continue;
      auto it = meets.find(*p);
      if (it == meets.end()) {
        if (vertex_index(m, *p) >= 0 || !contains(m, *p)) continue;
        it = meets.emplace(*p, std::set<int>{}).first;
      }
      it->second.insert(static_cast<int>(a));
      it->second.insert(static_cast<int>(b));
    }
  }
  for (auto& [p, lines] : meets)
    if (lines.size() >= 3)
      report.concurrent_extensions.push_back({p, std::vector<int>(lines.begin(), lines.end())});
  return report;
}

}  // namespace gg
