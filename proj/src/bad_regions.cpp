#include "guardgrid/bad_regions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "guardgrid/arrangement.hpp"
#include "guardgrid/errors.hpp"
#include "guardgrid/visibility.hpp"

namespace gg {

namespace {

// Inside the open double cone |cross(u, d)| < s * dot(u, d), d = x - apex.
bool in_open_wedge(const Point& apex, const Point& axis, const Scalar& s, const Point& x) {
  Point d = x - apex;
  Scalar along = dot(axis, d);
  if (along <= 0) return false;
  return abs(cross(axis, d)) < s * along;
}

Wedge make_wedge(const PolygonModel& m, const Point& apex, const Point& reflex, const Point& partner,
                 const Scalar& s) {
  Wedge w{apex, reflex, reflex - partner, {}};
  Point side = s * perp(w.axis);
  Point lo = w.axis - side;  // clockwise boundary ray
  Point hi = w.axis + side;  // counterclockwise boundary ray
  // Visibility is taken from the reflex vertex, so moving the apex back
  // along the extension only ever enlarges the wedge.
  VisibilityPolygon vis = visibility_polygon(m, reflex);
  std::vector<Point> poly = clip_left_of(vis.boundary, apex, apex + lo);
  poly = clip_left_of(poly, apex + hi, apex);
  poly = simplify_ring(std::move(poly));
  if (poly.size() >= 3 && twice_signed_area(poly) > 0) w.polygon = std::move(poly);
  return w;
}

}  // namespace

Point embiggened_apex(const PolygonModel& m, const Point& r, const Point& partner) {
  Point d = partner - r;
  Scalar len_up = Scalar(ceil_sqrt(dot(d, d)));
  Scalar t = pow(m.l_scalar(), -2) / len_up;
  return r + t * d;
}

BadRegion bad_region(const PolygonModel& m, const OppositeReflexPair& pair, const Scalar& s, bool embiggened) {
  if (s <= 0) throw Error(ErrorCode::kInvalidArgument, "slope must be positive");
  const Point& r1 = m.vertex(pair.r1);
  const Point& r2 = m.vertex(pair.r2);
  Point a1 = embiggened ? embiggened_apex(m, r1, r2) : r1;
  Point a2 = embiggened ? embiggened_apex(m, r2, r1) : r2;
  return BadRegion{pair, s, embiggened, {make_wedge(m, a1, r1, r2, s), make_wedge(m, a2, r2, r1, s)}};
}

bool in_bad_region(const PolygonModel& m, const BadRegion& region, const Point& x) {
  if (!contains(m, x)) throw Error(ErrorCode::kPointOutsidePolygon, "point outside polygon");
  for (const Wedge& w : region.wedges)
    if (in_open_wedge(w.apex, w.axis, region.s, x) && sees(m, w.reflex, x)) return true;
  return false;
}

Scalar max_dist_to_supporting_line(const BadRegion& region) {
  const DirectedLine& line = region.pair.line.line;
  Scalar best = 0;
  for (const Wedge& w : region.wedges)
    for (const Point& p : w.polygon) best = std::max(best, dist_sq_point_line(p, line));
  return best;
}

TripleReport check_no_triple_intersection(const PolygonModel& m, const Scalar& s, bool embiggened) {
  TripleReport report;
  std::vector<OppositeReflexPair> pairs = opposite_reflex_pairs(m);
  report.region_count = pairs.size();
  if (pairs.size() < 3) return report;

  std::vector<BadRegion> regions;
  SegmentList segs;
  for (const auto& pair : pairs) {
    regions.push_back(bad_region(m, pair, s, embiggened));
    for (const Wedge& w : regions.back().wedges)
      if (!w.polygon.empty()) append_ring(segs, w.polygon);
  }
  ArrangementFaces faces = arrangement_faces(segs);
  std::set<std::array<int, 3>> seen;
  for (const Point& rep : faces.representatives) {
    if (locate(m, rep) != Location::kInside) continue;
    ++report.faces_checked;
    std::vector<int> hits;
    for (int i = 0; i < static_cast<int>(regions.size()); ++i)
      if (in_bad_region(m, regions[static_cast<std::size_t>(i)], rep)) hits.push_back(i);
    for (std::size_t a = 0; a < hits.size(); ++a)
      for (std::size_t b = a + 1; b < hits.size(); ++b)
        for (std::size_t c = b + 1; c < hits.size(); ++c) {
          std::array<int, 3> key{hits[a], hits[b], hits[c]};
          if (seen.insert(key).second) report.triples.push_back({key, rep});
        }
  }
  return report;
}

}  // namespace gg
