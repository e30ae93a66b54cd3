#include <gtest/gtest.h>

#include <cmath>

#include "guardgrid/bad_regions.hpp"
#include "guardgrid/errors.hpp"
#include "guardgrid/fixtures.hpp"
#include "guardgrid/visibility.hpp"

using namespace gg;

namespace {

Scalar q(long a, long b = 1) { return make_scalar(a, b); }

PolygonModel fx(const std::string& name) { return load_polygon(fixture_vertices(name)); }

OppositeReflexPair only_pair(const PolygonModel& m) {
  auto pairs = opposite_reflex_pairs(m);
  EXPECT_EQ(pairs.size(), 1u);
  return pairs.at(0);
}

// Oracle for the slope test: compare tan of the angle between x - apex and the
// axis against s via explicit angle arithmetic in long double.
bool slope_oracle(const Point& apex, const Point& axis, double s, const Point& x) {
  long double dx = x.approx_x() - apex.approx_x(), dy = x.approx_y() - apex.approx_y();
  long double ux = axis.approx_x(), uy = axis.approx_y();
  long double along = (dx * ux + dy * uy) / std::sqrt(ux * ux + uy * uy);
  long double off = std::fabs(dx * uy - dy * ux) / std::sqrt(ux * ux + uy * uy);
  return along > 0 && off < s * along;
}

}  // namespace

TEST(BadRegion, ChannelSamplesRespectDistanceBound) {
  auto m = fx("channel");
  auto pair = only_pair(m);
  Scalar s = q(1, 1000);
  auto region = bad_region(m, pair, s);
  Scalar bound = s * m.l_scalar();
  Scalar bound_sq = bound * bound;
  EXPECT_LE(max_dist_to_supporting_line(region), bound_sq);
  EXPECT_GT(max_dist_to_supporting_line(region), 0);

  // Walk along the extension beyond each reflex vertex with small offsets.
  const Point r1 = m.vertex(pair.r1), r2 = m.vertex(pair.r2);
  int members = 0;
  for (const auto& [r, o] : {std::pair{r1, r2}, std::pair{r2, r1}}) {
    Point u = r - o;
    for (int k = 1; k < 40; ++k) {
      for (int j = -6; j <= 6; ++j) {
        Point x = r + q(k, 40) * u + q(j, 19997) * perp(u);
        if (!contains(m, x)) continue;
        bool in = in_bad_region(m, region, x);
        if (in) {
          ++members;
          EXPECT_LE(dist_sq_point_line(x, pair.line.line), bound_sq);
        }
        bool oracle = slope_oracle(r, u, 1.0 / 1000, x) && sees(m, r, x);
        EXPECT_EQ(in, oracle) << to_string(x.x()) << "," << to_string(x.y());
      }
    }
  }
  EXPECT_GT(members, 0);
}

TEST(BadRegion, Examples) {
  auto m = fx("channel");
  auto pair = only_pair(m);
  auto region = bad_region(m, pair, q(1, 1000));
  const Point r1 = m.vertex(pair.r1), r2 = m.vertex(pair.r2);
  // On the line strictly beyond r1.
  EXPECT_TRUE(in_bad_region(m, region, r1 + q(1, 2) * (r1 - r2)));
  // Far from the line.
  EXPECT_FALSE(in_bad_region(m, region, Point(2, 2)));
  // On the slope boundary: open region.
  Point u = r1 - r2;
  Point on_edge = r1 + q(1, 2) * (u + q(1, 1000) * perp(u));
  ASSERT_TRUE(contains(m, on_edge));
  EXPECT_FALSE(in_bad_region(m, region, on_edge));
  // Between the two reflex vertices is not bad.
  EXPECT_FALSE(in_bad_region(m, region, midpoint(r1, r2)));
  EXPECT_THROW(in_bad_region(m, region, Point(6, 1)), Error);
}

TEST(BadRegion, MonotoneInSlope) {
  auto m = fx("deshpande");
  Rng rng(17);
  for (const auto& pair : opposite_reflex_pairs(m)) {
    auto small = bad_region(m, pair, q(1, 50));
    auto large = bad_region(m, pair, q(1, 10));
    EXPECT_LE(max_dist_to_supporting_line(small), max_dist_to_supporting_line(large));
    for (int i = 0; i < 300; ++i) {
      Point x = random_interior_point(m, rng, 9);
      if (in_bad_region(m, small, x)) EXPECT_TRUE(in_bad_region(m, large, x));
    }
  }
}

TEST(BadRegion, EmbiggenedContainsPlain) {
  auto m = fx("channel");
  auto pair = only_pair(m);
  Scalar s = q(1, 100);
  auto plain = bad_region(m, pair, s);
  auto big = bad_region(m, pair, s, true);
  const Point r1 = m.vertex(pair.r1), r2 = m.vertex(pair.r2);
  for (int w = 0; w < 2; ++w) {
    const Point& apex = big.wedges[static_cast<std::size_t>(w)].apex;
    const Point& r = w == 0 ? r1 : r2;
    const Point& o = w == 0 ? r2 : r1;
    EXPECT_TRUE(on_segment(apex, r1, r2));
    Scalar d = dist_sq(apex, r);
    Scalar l2 = pow(m.l_scalar(), -2);
    EXPECT_LE(d, l2 * l2);
    EXPECT_GE(4 * d, l2 * l2);
    EXPECT_EQ(orient(r, o, apex), 0);
  }
  Rng rng(4);
  int hits = 0;
  for (int i = 0; i < 2000; ++i) {
    Point x = random_interior_point(m, rng, 50);
    if (in_bad_region(m, plain, x)) {
      ++hits;
      EXPECT_TRUE(in_bad_region(m, big, x));
    }
  }
  // Points on the extension are always plain members.
  for (int k = 1; k < 10; ++k) {
    Point x = r1 + q(k, 10) * (r1 - r2);
    EXPECT_TRUE(in_bad_region(m, plain, x));
    EXPECT_TRUE(in_bad_region(m, big, x));
  }
  // The reflex vertex itself lies inside the embiggened region only.
  EXPECT_FALSE(in_bad_region(m, plain, r1));
  EXPECT_TRUE(in_bad_region(m, big, r1));
  (void)hits;
}

TEST(BadRegion, DistanceBoundOnFixtures) {
  for (const auto& name : fixture_names()) {
    auto m = fx(name);
    for (const auto& pair : opposite_reflex_pairs(m))
      for (Scalar s : {q(1, 3), q(1, 40), pow(m.l_scalar(), -3)}) {
        Scalar b = s * m.l_scalar();
        EXPECT_LE(max_dist_to_supporting_line(bad_region(m, pair, s)), b * b) << name;
        EXPECT_LE(max_dist_to_supporting_line(bad_region(m, pair, s, true)), b * b) << name;
      }
  }
}

TEST(BadRegion, WedgePolygonAgreesWithMembership) {
  auto m = fx("deshpande");
  Rng rng(8);
  for (const auto& pair : opposite_reflex_pairs(m)) {
    auto region = bad_region(m, pair, q(1, 8));
    for (int i = 0; i < 400; ++i) {
      Point x = random_interior_point(m, rng, 13);
      bool in_poly = false;
      for (const auto& w : region.wedges)
        if (!w.polygon.empty() && ring_locate(w.polygon, x) == Location::kInside) in_poly = true;
      bool on_boundary = false;
      for (const auto& w : region.wedges)
        if (!w.polygon.empty() && ring_locate(w.polygon, x) == Location::kBoundary) on_boundary = true;
      if (!on_boundary) EXPECT_EQ(in_bad_region(m, region, x), in_poly);
    }
  }
}

TEST(TripleIntersection, FewPairsTriviallyEmpty) {
  for (const auto& name : {"square", "l-shape", "channel", "deshpande"}) {
    auto m = fx(name);
    auto r = check_no_triple_intersection(m, q(1, 4));
    EXPECT_TRUE(r.ok()) << name;
    EXPECT_EQ(r.faces_checked, 0u);
  }
}

namespace {

// Superset oracle: intersect the raw open cones of one wedge from each of three
// regions inside the bounding box of P, ignoring visibility. Zero area for
// every wedge choice proves the three regions are disjoint.
Scalar cone_triple_area(const PolygonModel& m, const std::array<const Wedge*, 3>& ws, const Scalar& s) {
  long lo = static_cast<long>(m.min_x()) - 1, hi = static_cast<long>(m.max_x()) + 1;
  long blo = static_cast<long>(m.min_y()) - 1, bhi = static_cast<long>(m.max_y()) + 1;
  std::vector<Point> poly = {Point(lo, blo), Point(hi, blo), Point(hi, bhi), Point(lo, bhi)};
  for (const Wedge* w : ws) {
    Point side = s * perp(w->axis);
    poly = clip_left_of(poly, w->apex, w->apex + (w->axis - side));
    poly = clip_left_of(poly, w->apex + (w->axis + side), w->apex);
    if (poly.size() < 3) return 0;
  }
  return twice_signed_area(poly);
}

bool cone_oracle_disjoint(const PolygonModel& m, const Scalar& s) {
  std::vector<BadRegion> regions;
  for (const auto& p : opposite_reflex_pairs(m)) regions.push_back(bad_region(m, p, s));
  for (std::size_t a = 0; a < regions.size(); ++a)
    for (std::size_t b = a + 1; b < regions.size(); ++b)
      for (std::size_t c = b + 1; c < regions.size(); ++c)
        for (int mask = 0; mask < 8; ++mask) {
          std::array<const Wedge*, 3> ws = {&regions[a].wedges[mask & 1], &regions[b].wedges[(mask >> 1) & 1],
                                            &regions[c].wedges[(mask >> 2) & 1]};
          if (cone_triple_area(m, ws, s) > 0) return false;
        }
  return true;
}

}  // namespace

TEST(TripleIntersection, GeneralPositionTheoremSlope) {
  auto m = load_polygon(random_polygon(14, 40, 4, true));
  ASSERT_TRUE(check_general_position(m).ok());
  ASSERT_EQ(opposite_reflex_pairs(m).size(), 3u);
  Scalar s = pow(m.l_scalar(), -9);
  auto r = check_no_triple_intersection(m, s);
  EXPECT_EQ(r.region_count, 3u);
  EXPECT_GT(r.faces_checked, 0u);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(cone_oracle_disjoint(m, s));
  EXPECT_TRUE(check_no_triple_intersection(m, s, true).ok());
}

TEST(TripleIntersection, ConcurrentExtensionsViolate) {
  auto m = fx("hub");
  auto pairs = opposite_reflex_pairs(m);
  ASSERT_GE(pairs.size(), 3u);
  // The three extensions through (8,20)-(10,20), (20,8)-(20,10) and
  // (30,30)-(32,32) share one point.
  auto vi = [&](long x, long y) { return vertex_index(m, Point(x, y)); };
  std::vector<int> chosen;
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    auto [a, b] = std::pair<int, int>(std::minmax(pairs[static_cast<std::size_t>(i)].r1, pairs[static_cast<std::size_t>(i)].r2));
    for (auto [p, q2] : {std::pair{vi(8, 20), vi(10, 20)}, std::pair{vi(20, 8), vi(20, 10)},
                         std::pair{vi(30, 30), vi(32, 32)}})
      if (std::pair<int, int>(std::minmax(p, q2)) == std::pair{a, b}) chosen.push_back(i);
  }
  ASSERT_EQ(chosen.size(), 3u);
  const auto& l0 = pairs[static_cast<std::size_t>(chosen[0])].line.line;
  const auto& l1 = pairs[static_cast<std::size_t>(chosen[1])].line.line;
  const auto& l2 = pairs[static_cast<std::size_t>(chosen[2])].line.line;
  Point c = std::get<Point>(line_intersection(l0, l1));
  EXPECT_EQ(c, std::get<Point>(line_intersection(l1, l2)));
  EXPECT_EQ(c, Point(20, 20));
  EXPECT_FALSE(check_general_position(m).ok());

  for (Scalar s : {q(1, 4), q(1, 20), pow(m.l_scalar(), -9)}) {
    auto r = check_no_triple_intersection(m, s);
    EXPECT_FALSE(r.ok());
    bool found = false;
    for (const auto& t : r.triples) {
      std::array<int, 3> want = {chosen[0], chosen[1], chosen[2]};
      std::sort(want.begin(), want.end());
      if (t.regions != want) continue;
      found = true;
      // The witness lies in all three regions and near the common point.
      for (int k : t.regions) EXPECT_TRUE(in_bad_region(m, bad_region(m, pairs[static_cast<std::size_t>(k)], s), t.witness));
      Scalar reach = s * m.l_scalar() * 4;
      EXPECT_LE(dist_sq(t.witness, c), 2 * 40 * 40);
      EXPECT_LE(dist_sq_point_line(t.witness, l0), reach * reach);
    }
    EXPECT_TRUE(found) << to_string(s);
  }
  // Larger slopes only add triples.
  EXPECT_GE(check_no_triple_intersection(m, q(1, 4)).triples.size(),
            check_no_triple_intersection(m, q(1, 20)).triples.size());
}
