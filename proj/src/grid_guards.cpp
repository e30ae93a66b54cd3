#include "guardgrid/grid_guards.hpp"

#include <algorithm>

#include "guardgrid/arrangement.hpp"
#include "guardgrid/bad_regions.hpp"
#include "guardgrid/errors.hpp"
#include "guardgrid/parallel.hpp"
#include "guardgrid/visibility.hpp"

namespace gg {

GridSpec grid_spec(const PolygonModel& m, int exponent) {
  if (exponent < 1) throw Error(ErrorCode::kInvalidArgument, "grid exponent must be positive");
  return GridSpec{exponent, pow(m.l_scalar(), -exponent)};
}

GridSpec grid_spec_width(const Scalar& w) {
  if (w <= 0 || w.get_num() != 1)
    throw Error(ErrorCode::kInvalidArgument, "grid width must be 1/k for a positive integer k");
  return GridSpec{0, w};
}

bool is_grid_point(const GridSpec& spec, const Point& p) {
  return Scalar(p.x() / spec.w).get_den() == 1 && Scalar(p.y() / spec.w).get_den() == 1;
}

namespace {

struct Rounded {
  Point point;
  bool rerounded = false;  // the unconstrained nearest lattice point was not in P
};

bool better(const Scalar& d, const Point& p, const Scalar& best_d, const Point& best) {
  if (d != best_d) return d < best_d;
  return lex_compare(p, best) < 0;
}

Rounded round_impl(const GridSpec& spec, const PolygonModel& m, const Point& x) {
  if (!contains(m, x)) throw Error(ErrorCode::kPointOutsidePolygon, "cannot round a point outside P");
  const Integer bx = floor(x.x() / spec.w), by = floor(x.y() / spec.w);
  auto cell_dist = [](long i) { return i < 0 ? -i : (i > 1 ? i - 1 : 0); };

  // Unconstrained nearest lattice point: one of the four cell corners.
  std::optional<Point> free_best;
  Scalar free_d;
  for (long i = 0; i <= 1; ++i)
    for (long j = 0; j <= 1; ++j) {
      Point p(Scalar(bx + i) * spec.w, Scalar(by + j) * spec.w);
      Scalar d = dist_sq(p, x);
      if (!free_best || better(d, p, free_d, *free_best)) free_best = p, free_d = d;
    }

  // Rings of cells around the base cell; ring r is at distance >= r*w.
  constexpr long kMaxRing = 512;
  std::optional<Point> best;
  Scalar best_d;
  for (long r = 0; r <= kMaxRing; ++r) {
    for (long i = -r; i <= r + 1; ++i)
      for (long j = -r; j <= r + 1; ++j) {
        if (std::max(cell_dist(i), cell_dist(j)) != r) continue;
        Point p(Scalar(bx + i) * spec.w, Scalar(by + j) * spec.w);
        Scalar d = dist_sq(p, x);
        if (best && !better(d, p, best_d, *best)) continue;
        if (!contains(m, p)) continue;
        best = p, best_d = d;
      }
    if (best) {
      Scalar reach = Scalar(r + 1) * spec.w;
      if (best_d < reach * reach) return {*best, *best != *free_best};
    }
  }
  throw Error(ErrorCode::kNoGridPointNearby, "no grid point of P near the query point");
}

}  // namespace

Point round_to_grid(const GridSpec& spec, const PolygonModel& m, const Point& x) {
  return round_impl(spec, m, x).point;
}

std::string to_string(SurroundCase c) {
  switch (c) {
    case SurroundCase::kInterior: return "interior";
    case SurroundCase::kBoundary: return "boundary";
    case SurroundCase::kCorner: return "corner";
  }
  return "?";
}

std::vector<Point> SurroundingGrid::starred_points(const PolygonModel& m) const {
  std::vector<Point> out = points;
  if (starred && std::find(out.begin(), out.end(), m.vertex(*starred)) == out.end())
    out.push_back(m.vertex(*starred));
  return out;
}

std::array<Point, 3> surrogate_triangle(const Point& x, const Scalar& alpha) {
  Scalar half = alpha / 2, side = alpha * 3 / 4;
  return {Point(x.x() - side, x.y() - half), Point(x.x() + side, x.y() - half), Point(x.x(), x.y() + alpha)};
}

SurroundingGrid surrounding_grid(const GridSpec& spec, const PolygonModel& m, const Point& x, const Scalar& alpha) {
  if (!contains(m, x)) throw Error(ErrorCode::kPointOutsidePolygon, "center outside polygon");
  Scalar cap = pow(m.l_scalar(), -2);
  if (alpha <= 0 || alpha > cap) throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, L^-2]");

  SurroundingGrid out;
  out.center = x;
  out.triangle = surrogate_triangle(x, alpha);
  const auto& tri = out.triangle;

  std::vector<Point> defining(tri.begin(), tri.end());
  std::vector<int> enclosed;
  for (int i = 0; i < m.n(); ++i)
    if (ring_locate(tri, m.vertex(i)) != Location::kOutside) enclosed.push_back(i);
  bool crossing = false;
  for (int i = 0; i < m.n(); ++i)
    for (int k = 0; k < 3; ++k) {
      SegmentHit h = intersect_segments(m.vertex(i), m.vertex(i + 1), tri[static_cast<std::size_t>(k)],
                                        tri[static_cast<std::size_t>((k + 1) % 3)]);
      if (h.kind == SegmentHit::Kind::kNone) continue;
      crossing = true;
      defining.push_back(h.first);
      if (h.kind == SegmentHit::Kind::kOverlap) defining.push_back(h.second);
    }
  if (!enclosed.empty()) {
    out.kind = SurroundCase::kCorner;
    for (int i : enclosed) defining.push_back(m.vertex(i));
  } else if (crossing) {
    out.kind = SurroundCase::kBoundary;
  }

  for (const Point& v : defining) {
    if (!contains(m, v)) continue;
    Rounded r = round_impl(spec, m, v);
    if (r.rerounded) ++out.rerounded;
    if (std::find(out.points.begin(), out.points.end(), r.point) == out.points.end())
      out.points.push_back(r.point);
  }

  Scalar reach = pow(m.l_scalar(), -1);
  Scalar reach_sq = reach * reach;
  for (int i : reflex_vertices(m)) {
    Scalar d = dist_sq(x, m.vertex(i));
    if (d > reach_sq) continue;
    if (!out.starred || d < dist_sq(x, m.vertex(*out.starred))) out.starred = i;
  }
  return out;
}

std::string to_string(GuardTag t) {
  switch (t) {
    case GuardTag::kOriginal: return "original";
    case GuardTag::kAlphaGrid: return "alpha_grid";
    case GuardTag::kStarVertex: return "star_vertex";
    case GuardTag::kBadRegionVertex: return "bad_region_vertex";
    case GuardTag::kSolverGreedy: return "solver_greedy";
  }
  return "?";
}

void GuardSet::add(const Point& p, GuardTag tag) {
  if (std::find(guards.begin(), guards.end(), p) != guards.end()) return;
  guards.push_back(p);
  tags.push_back(tag);
}

GuardSet make_guard_set(const std::vector<Point>& points, GuardTag tag) {
  GuardSet g;
  for (const Point& p : points) g.add(p, tag);
  return g;
}

GuardSet grid_replacement(const GridSpec& spec, const PolygonModel& m, const GuardSet& opt, const Scalar& alpha,
                          const Scalar& s) {
  for (const Point& x : opt.guards)
    if (!contains(m, x)) throw Error(ErrorCode::kInputGuardOutsidePolygon, "guard outside polygon");
  std::vector<BadRegion> regions;
  for (const auto& pair : opposite_reflex_pairs(m)) regions.push_back(bad_region(m, pair, s));

  GuardSet g;
  for (const Point& x : opt.guards) {
    if (is_grid_point(spec, x)) {
      g.add(x, GuardTag::kOriginal);
      continue;
    }
    SurroundingGrid sg = surrounding_grid(spec, m, x, alpha);
    for (const Point& p : sg.points) g.add(p, GuardTag::kAlphaGrid);
    if (sg.starred) g.add(m.vertex(*sg.starred), GuardTag::kStarVertex);
    for (const BadRegion& region : regions) {
      if (!in_bad_region(m, region, x)) continue;
      int a = region.pair.r1, b = region.pair.r2;
      Scalar da = dist_sq(x, m.vertex(a)), db = dist_sq(x, m.vertex(b));
      int pick = (da < db || (da == db && a < b)) ? a : b;
      g.add(m.vertex(pick), GuardTag::kBadRegionVertex);
    }
  }
  return g;
}

CoverageResult verify_coverage(const PolygonModel& m, const std::vector<Point>& guards) {
  std::vector<VisibilityPolygon> vis(guards.size());
  parallel_for(guards.size(), [&](std::size_t i) { vis[i] = visibility_polygon(m, guards[i]); });

  SegmentList segs;
  append_ring(segs, m.vertices());
  for (const auto& v : vis) append_ring(segs, v.boundary);
  std::vector<Point> reps = arrangement_faces(segs).representatives;

  std::vector<char> inside(reps.size(), 0), seen(reps.size(), 0);
  parallel_for(reps.size(), [&](std::size_t i) {
    if (locate(m, reps[i]) != Location::kInside) return;
    inside[i] = 1;
    for (const auto& v : vis)
      if (in_visibility_polygon(v, reps[i])) {
        seen[i] = 1;
        break;
      }
  });

  CoverageResult result;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (!inside[i]) continue;
    ++result.faces;
    if (!seen[i] && result.covered) {
      result.covered = false;
      result.witness = reps[i];
    }
  }
  return result;
}

}  // namespace gg
