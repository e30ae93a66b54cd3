#include <gtest/gtest.h>

#include <algorithm>

#include "guardgrid/bad_regions.hpp"
#include "guardgrid/errors.hpp"
#include "guardgrid/fixtures.hpp"
#include "guardgrid/lemma_lab.hpp"
#include "guardgrid/visibility.hpp"
#include "json.hpp"

using namespace gg;

namespace {

Scalar q(long a, long b = 1) { return make_scalar(a, b); }

PolygonModel fx(const std::string& name) { return load_polygon(fixture_vertices(name)); }

Scalar lp(const PolygonModel& m, int e) { return pow(m.l_scalar(), e); }

// Line a*x + b*y = c through two integer points.
struct IntLine {
  long a, b, c;
};
IntLine int_line(const Point& p, const Point& r) {
  long x1 = p.x().get_num().get_si(), y1 = p.y().get_num().get_si();
  long x2 = r.x().get_num().get_si(), y2 = r.y().get_num().get_si();
  long a = y2 - y1, b = x1 - x2;
  return {a, b, a * x1 + b * y1};
}

// Direction d strictly inside the counterclockwise span of u and v.
bool strictly_between(const Point& u, const Point& v, const Point& d) {
  Point a = u, b = v;
  if (cross(a, b) < 0) std::swap(a, b);
  return cross(a, d) > 0 && cross(d, b) > 0;
}

// Definition-level cone property: the two cones share an interior direction,
// so far enough out they share a ray.
bool shares_direction(const Point& g1, const Point& g2, const Point& r1, const Point& r2, const Point& p1,
                      const Point& p2) {
  Point a1 = r2 - g1, b1 = p1 - g1, a2 = r1 - g2, b2 = p2 - g2;
  if (cross(a1, b1) == 0 || cross(a2, b2) == 0) return false;
  for (const Point& d : {a1, b1})
    for (const Point& e : {a2, b2})
      if (cross(d, e) == 0 && dot(d, e) > 0) return true;  // a common boundary direction
  return strictly_between(a2, b2, a1) || strictly_between(a2, b2, b1) || strictly_between(a1, b1, a2) ||
         strictly_between(a1, b1, b2);
}

}  // namespace

// Reports ---------------------------------------------------------------------

TEST(Report, StatusRules) {
  LemmaReport r;
  EXPECT_EQ(r.status(), LemmaStatus::kSkipped);
  r.skipped = 3;
  EXPECT_EQ(r.status(), LemmaStatus::kSkipped);
  r.instances_checked = 1;
  EXPECT_EQ(r.status(), LemmaStatus::kVerified);
  r.demonstrations.push_back({"x", {}, ""});
  EXPECT_EQ(r.status(), LemmaStatus::kVerified);
  r.violations.push_back({"x", {Point(1, 1)}, ""});
  EXPECT_EQ(r.status(), LemmaStatus::kViolated);
}

TEST(Report, JsonShape) {
  LemmaReport r;
  r.lemma_id = "demo";
  r.instances_checked = 2;
  r.violations.push_back({"inst", {Point(q(1, 2), q(3))}, "why"});
  r.measurements.emplace_back("item1", q(1, 3));
  auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j["lemma_id"], "demo");
  EXPECT_EQ(j["status"], "Violated");
  EXPECT_EQ(j["instances_checked"], 2);
  EXPECT_EQ(j["violations"][0]["witness"][0][0], "1/2");
  EXPECT_EQ(j["measurements"]["item1"], "1/3");
  auto arr = nlohmann::json::parse(to_json(std::vector<LemmaReport>{r, r}));
  EXPECT_EQ(arr.size(), 2u);
}

// Distances -------------------------------------------------------------------

TEST(Distances, UnitSquareItemOne) {
  auto m = load_polygon({Point(1, 1), Point(2, 1), Point(2, 2), Point(1, 2)});
  auto r = check_distance_lemma(m);
  EXPECT_EQ(r.status(), LemmaStatus::kVerified);
  ASSERT_NE(r.measurement("item1"), nullptr);
  EXPECT_EQ(*r.measurement("item1"), 1);
}

TEST(Distances, ItemTwoMatchesIntegerOracle) {
  for (const auto& name : {"comb3", "channel", "deshpande"}) {
    auto m = fx(name);
    // Oracle: min over all vertex triples of cross^2 / |w2-w1|^2, in integers.
    const auto& vs = m.vertices();
    Scalar best = -1;
    for (const Point& w1 : vs)
      for (const Point& w2 : vs) {
        if (w1 == w2) continue;
        IntLine l = int_line(w1, w2);
        for (const Point& v : vs) {
          long c = l.a * v.x().get_num().get_si() + l.b * v.y().get_num().get_si() - l.c;
          if (c == 0) continue;
          Scalar d = q(c * c, l.a * l.a + l.b * l.b);
          if (best < 0 || d < best) best = d;
        }
      }
    auto r = check_distance_lemma(m, 20);
    ASSERT_NE(r.measurement("item2"), nullptr) << name;
    EXPECT_EQ(*r.measurement("item2"), best) << name;
    EXPECT_GE(best * lp(m, 2), 1) << name;
  }
}

TEST(Distances, ItemFourAgainstAllPairs) {
  auto m = fx("comb3");
  // Oracle: every crossing by Cramer's rule, all pairs compared.
  const auto& vs = m.vertices();
  std::vector<IntLine> lines;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) lines.push_back(int_line(vs[i], vs[j]));
  std::vector<Point> pts;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      long det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
      if (det == 0) continue;
      pts.emplace_back(q(lines[i].c * lines[j].b - lines[j].c * lines[i].b, det),
                       q(lines[i].a * lines[j].c - lines[j].a * lines[i].c, det));
    }
  std::sort(pts.begin(), pts.end(), LexLess{});
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Scalar best = -1;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Scalar d = dist_sq(pts[i], pts[j]);
      if (best < 0 || d < best) best = d;
    }
  ASSERT_GT(best, 0);
  EXPECT_GE(best * lp(m, 8), 1);
  auto r = check_distance_lemma(m, 0);
  EXPECT_EQ(r.status(), LemmaStatus::kVerified);
  const Scalar* item4 = r.measurement("item4");
  if (best < lp(m, -8)) {
    ASSERT_NE(item4, nullptr);
    EXPECT_EQ(*item4, best);
  } else if (item4) {
    EXPECT_GE(*item4, best);
  }
}

TEST(Distances, RandomTenGon) {
  auto m = load_polygon(random_polygon(10, 30, 5));
  auto r = check_distance_lemma(m);
  EXPECT_EQ(r.status(), LemmaStatus::kVerified);
  EXPECT_TRUE(r.violations.empty());
  for (const char* item : {"item1", "item2", "item6"}) EXPECT_NE(r.measurement(item), nullptr) << item;
  EXPECT_GE(*r.measurement("item1"), 1);
  EXPECT_GE(*r.measurement("item6") * lp(m, 4), 64);
}

TEST(Distances, HundredRandomPolygons) {
  Rng rng(99);
  for (int k = 0; k < 100; ++k) {
    int n = static_cast<int>(rng.range(4, 14));
    long coord = rng.range(12, 50);
    auto m = load_polygon(random_polygon(n, coord, 1000 + static_cast<std::uint64_t>(k)));
    auto r = check_distance_lemma(m, 20, static_cast<std::uint64_t>(k));
    EXPECT_EQ(r.status(), LemmaStatus::kVerified) << "polygon " << k;
  }
}

// Local visibility ---------------------------------------------------------------

TEST(LocalVisibility, ConvexAlwaysContained) {
  auto m = fx("square");
  Scalar alpha = lp(m, -7), s = lp(m, -3);
  ASSERT_TRUE(in_lemma_regime(m, alpha, s));
  for (const Point& x : {Point(q(7, 3), q(5)), Point(q(1), q(9)), Point(q(9, 2), q(1))}) {
    auto r = check_local_visibility(grid_spec(m, 9), m, x, alpha, s);
    EXPECT_EQ(r.status(), LemmaStatus::kVerified);
    EXPECT_TRUE(r.demonstrations.empty());
  }
}

TEST(LocalVisibility, HoldsOutsideBadRegionsOnEveryFixture) {
  Rng rng(3);
  for (const auto& name : fixture_names()) {
    auto m = fx(name);
    Scalar alpha = lp(m, -7), s = lp(m, -3);
    auto spec = grid_spec(m, 9);
    int checked = 0;
    for (int k = 0; k < 3; ++k) {
      auto r = check_local_visibility(spec, m, random_interior_point(m, rng, 977), alpha, s);
      EXPECT_NE(r.status(), LemmaStatus::kViolated) << name;
      checked += static_cast<int>(r.instances_checked);
    }
    EXPECT_GT(checked, 0) << name;
  }
}

TEST(LocalVisibility, ChannelNearReflexVertex) {
  auto m = fx("channel");
  Scalar alpha = lp(m, -7), s = lp(m, -3);
  // Just above the tip (7,4), square to the pinhole line.
  auto r = check_local_visibility(grid_spec(m, 9), m, Point(q(7), q(4) + q(1, 1000)), alpha, s);
  EXPECT_EQ(r.status(), LemmaStatus::kVerified);
}

TEST(LocalVisibility, FailsInsideBadRegionOfCounterexample) {
  auto f = build_counterexample(1);
  const auto& m = f.polygon;
  Scalar alpha = lp(m, -7), s = lp(m, -3);
  ASSERT_TRUE(in_lemma_regime(m, alpha, s));
  // a_40 is about 2^-40 L^-3 below the line, well under 16 alpha.
  Point x = approach_point(m, 40);
  auto r = check_local_visibility(grid_spec(m, 9), m, x, alpha, s);
  EXPECT_EQ(r.status(), LemmaStatus::kSkipped);
  EXPECT_TRUE(r.violations.empty());
  ASSERT_EQ(r.demonstrations.size(), 1u);
  // Independent recheck with segment visibility: x sees the witness, no grid point does.
  const auto& w = r.demonstrations[0].witness;
  ASSERT_GE(w.size(), 3u);
  EXPECT_EQ(w[0], x);
  EXPECT_TRUE(sees(m, x, w[1]));
  for (std::size_t i = 2; i < w.size(); ++i) EXPECT_FALSE(sees(m, w[i], w[1])) << i;
  // The hole is beyond the pinhole.
  EXPECT_GT(w[1].x(), 11);
}

TEST(LocalVisibility, Errors) {
  auto m = fx("square");
  EXPECT_THROW(check_local_visibility(m, Point(20, 20), lp(m, -7), lp(m, -3)), Error);
}

TEST(LocalVisibility, ScaledParametersAreFlagged) {
  auto m = fx("comb3");
  auto r = check_local_visibility(m, Point(q(5, 2), q(3, 2)), lp(m, -2), q(1, 10));
  EXPECT_EQ(r.status(), LemmaStatus::kSkipped);
  EXPECT_FALSE(r.notes.empty());
}

// Counterexample ---------------------------------------------------------------------

TEST(Counterexample, SingleApproachPoint) {
  auto f = build_counterexample(1);
  ASSERT_EQ(f.approach.size(), 1u);
  EXPECT_TRUE(f.none_sees_target);
  EXPECT_EQ(f.polygon.vertex(f.opposite_pair[0]), Point(11, 6));
  EXPECT_EQ(f.polygon.vertex(f.opposite_pair[1]), Point(10, 6));
  // Shadow of the two tips seen from (5, 6 - delta): the ray over (11,6)
  // reaches the wall at 6 + 10 delta / 6, the ray under (10,6) at 6 + 11 delta / 5.
  Scalar delta = lp(f.polygon, -3) / 2;
  EXPECT_EQ(f.approach[0], Point(q(5), 6 - delta));
  EXPECT_EQ(f.intervals[0].first, 6 + delta * 10 / 6);
  EXPECT_EQ(f.intervals[0].second, 6 + delta * 11 / 5);
  EXPECT_GT(f.intervals[0].first, 6);  // t is excluded
  EXPECT_THROW(build_counterexample(0), Error);
}

TEST(Counterexample, FiveDisjointIntervals) {
  auto f = build_counterexample(5);
  ASSERT_EQ(f.intervals.size(), 5u);
  EXPECT_TRUE(f.none_sees_target);
  EXPECT_TRUE(f.intervals_disjoint);
  for (int i = 0; i < 5; ++i) {
    Scalar delta = pow(q(2), -(i + 1)) * lp(f.polygon, -3);
    EXPECT_EQ(f.intervals[static_cast<std::size_t>(i)].first, 6 + delta * 10 / 6);
    EXPECT_EQ(f.intervals[static_cast<std::size_t>(i)].second, 6 + delta * 11 / 5);
    EXPECT_FALSE(sees(f.polygon, f.approach[static_cast<std::size_t>(i)], f.target));
  }
  // Shrinking towards t.
  for (int i = 0; i + 1 < 5; ++i)
    EXPECT_LT(f.intervals[static_cast<std::size_t>(i + 1)].second, f.intervals[static_cast<std::size_t>(i)].first);
}

TEST(Counterexample, AlphaGridOfThirdPointMissesPartOfItsInterval) {
  auto f = build_counterexample(3);
  const auto& m = f.polygon;
  Scalar alpha = lp(m, -2);
  auto grid = surrounding_grid(grid_spec(m, 4), m, f.approach[2], alpha);
  EXPECT_FALSE(wall_covered(f, f.approach[2], grid.starred_points(m)));
  auto miss = first_missed_approach(f, grid.starred_points(m));
  ASSERT_TRUE(miss);
  EXPECT_LE(*miss, 3);
}

TEST(Counterexample, AnyFiniteSetMissesSomeApproachPoint) {
  auto f = build_counterexample(2);
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Point> c;
    for (int k = 0; k < 6; ++k) {
      Point p(q(rng.range(1001, 8999), 1000), q(rng.range(1001, 10999), 1000));
      if (p.y() == 6) continue;
      c.push_back(p);
    }
    auto miss = first_missed_approach(f, c);
    ASSERT_TRUE(miss) << trial;
    // Oracle: the interval formula for a_i versus what c sees.
    Scalar delta = pow(q(2), -*miss) * lp(f.polygon, -3);
    Scalar lo = 6 + delta * 10 / 6, hi = 6 + delta * 11 / 5;
    bool covered = false;
    for (const Point& p : c)
      for (const auto& iv : wall_visibility(f, p))
        if (iv.first <= lo && hi <= iv.second) covered = true;
    EXPECT_FALSE(covered);
  }
  EXPECT_THROW(first_missed_approach(f, {Point(15, 3)}), Error);
  EXPECT_THROW(first_missed_approach(f, {Point(3, 6)}), Error);
}

// Limited blocking -------------------------------------------------------------------

TEST(LimitedBlocking, GeneratedCasesHoldWithExactIntersection) {
  std::size_t holds = 0;
  for (const auto& name : {"l-shape", "comb3", "channel", "deshpande"}) {
    auto m = fx(name);
    LabParams p;
    p.samples = 150;
    Scalar alpha = lp(m, -p.alpha_exponent);
    for (const auto& c : generate_blocking_cases(m, p)) {
      auto res = evaluate_blocking_case(m, c, alpha);
      EXPECT_NE(res.outcome, CaseOutcome::kViolated) << name;
      if (res.outcome != CaseOutcome::kHolds) continue;
      ++holds;
      // Oracle: Cramer on l(g,q) and l(r1,r2) with rationals.
      Point g = c.g, qq = m.vertex(c.q), r1 = m.vertex(c.r1), r2 = m.vertex(c.r2);
      Scalar a1 = qq.y() - g.y(), b1 = g.x() - qq.x(), c1 = a1 * g.x() + b1 * g.y();
      Scalar a2 = r2.y() - r1.y(), b2 = r1.x() - r2.x(), c2 = a2 * r1.x() + b2 * r1.y();
      Scalar det = a1 * b2 - a2 * b1;
      ASSERT_NE(det, 0);
      Point p(Scalar((c1 * b2 - c2 * b1) / det), Scalar((a1 * c2 - a2 * c1) / det));
      ASSERT_TRUE(res.p);
      EXPECT_EQ(*res.p, p);
      EXPECT_LE(dist_sq(p, r2) * lp(m, 4), 1);
    }
  }
  EXPECT_GE(holds, 100u);
}

TEST(LimitedBlocking, UnmetHypothesesAreSkipped) {
  auto m = fx("comb3");
  LabParams p;
  p.samples = 150;
  Scalar alpha = lp(m, -7);
  bool found = false;
  for (const auto& c : generate_blocking_cases(m, p)) {
    if (evaluate_blocking_case(m, c, alpha).outcome != CaseOutcome::kHolds) continue;
    // Swap q for another reflex vertex outside cone(g).
    for (int other : reflex_vertices(m)) {
      if (other == c.q || other == c.r1 || other == c.r2) continue;
      if (grid_cone(m, c.g, m.vertex(c.r1), m.vertex(c.r2)).contains(m.vertex(other))) continue;
      BlockingCase d = c;
      d.q = other;
      auto res = evaluate_blocking_case(m, d, alpha);
      EXPECT_EQ(res.outcome, CaseOutcome::kSkipped);
      found = true;
    }
    BlockingCase same = c;
    same.g = c.x;  // g inside cone(x)
    EXPECT_EQ(evaluate_blocking_case(m, same, alpha).outcome, CaseOutcome::kSkipped);
    EXPECT_EQ(evaluate_blocking_case(m, c, lp(m, -6)).outcome, CaseOutcome::kSkipped);
    if (found) break;
  }
  EXPECT_TRUE(found);
  auto r = check_limited_blocking(m, p);
  EXPECT_EQ(r.status(), LemmaStatus::kVerified);
  EXPECT_GT(r.skipped, 0u);
}

// Cone property ----------------------------------------------------------------------

TEST(ConeProperty, RaysIntersectMatchesIntegerOracle) {
  Rng rng(21);
  for (int k = 0; k < 2000; ++k) {
    long v[8];
    for (long& x : v) x = rng.range(-6, 6);
    Point a(v[0], v[1]), ta(v[2], v[3]), b(v[4], v[5]), tb(v[6], v[7]);
    if (a == ta || b == tb) continue;
    long dax = v[2] - v[0], day = v[3] - v[1], dbx = v[6] - v[4], dby = v[7] - v[5];
    long den = dax * dby - day * dbx;
    long abx = v[4] - v[0], aby = v[5] - v[1];
    bool oracle;
    if (den != 0) {
      long tn = abx * dby - aby * dbx, un = abx * day - aby * dax;
      // t = tn/den >= 0 and u = un/den >= 0
      oracle = (den > 0) ? (tn >= 0 && un >= 0) : (tn <= 0 && un <= 0);
    } else if (abx * day - aby * dax != 0) {
      oracle = false;
    } else {
      bool same_dir = dax * dbx + day * dby > 0;
      oracle = same_dir || (abx * dax + aby * day >= 0);
    }
    EXPECT_EQ(rays_intersect(a, ta, b, tb), oracle) << k;
  }
}

TEST(ConeProperty, Examples) {
  auto m = fx("channel");
  Scalar s = lp(m, -3);
  auto pairs = opposite_reflex_pairs(m);
  ASSERT_EQ(pairs.size(), 1u);
  Point g(3, 2);
  EXPECT_EQ(evaluate_cone_case(m, {g, g, 0}, s).outcome, CaseOutcome::kHolds);
  // On the extension beyond a reflex vertex: inside the embiggened region.
  Point beyond = m.vertex(pairs[0].r2) + q(1, 2) * (m.vertex(pairs[0].r2) - m.vertex(pairs[0].r1));
  auto res = evaluate_cone_case(m, {beyond, beyond + Point(s / 8, Scalar(0)), 0}, s);
  EXPECT_EQ(res.outcome, CaseOutcome::kSkipped);
  // Too far apart.
  EXPECT_EQ(evaluate_cone_case(m, {g, g + Point(s, Scalar(0)), 0}, s).outcome, CaseOutcome::kSkipped);
  EXPECT_EQ(evaluate_cone_case(m, {g, g, 5}, s).outcome, CaseOutcome::kSkipped);
}

TEST(ConeProperty, StraddlingTheExtensionFails) {
  // Outside the lemma: points on both sides of the line just past r1 see
  // both rays cross whichever way they are named.
  auto m = fx("channel");
  auto pairs = opposite_reflex_pairs(m);
  Point r1 = m.vertex(pairs[0].r1), r2 = m.vertex(pairs[0].r2);
  Point p1 = embiggened_apex(m, r1, r2), p2 = embiggened_apex(m, r2, r1);
  Point base = r1 + q(1, 2) * (r1 - r2);
  Point up = base + Point(Scalar(0), q(1, 10000)), down = base - Point(Scalar(0), q(1, 10000));
  EXPECT_TRUE(rays_intersect(up, p1, down, p2));
  EXPECT_TRUE(rays_intersect(down, p1, up, p2));
  EXPECT_FALSE(shares_direction(up, down, r1, r2, p1, p2));
  EXPECT_FALSE(shares_direction(down, up, r1, r2, p1, p2));
}

TEST(ConeProperty, GeneratedCasesSatisfyDefinition) {
  std::size_t holds = 0, skipped = 0;
  for (const auto& name : {"channel", "deshpande", "hub"}) {
    auto m = fx(name);
    LabParams p;
    p.samples = 60;
    Scalar s = lp(m, -p.s_exponent);
    auto pairs = opposite_reflex_pairs(m);
    for (const auto& c : generate_cone_cases(m, p)) {
      auto res = evaluate_cone_case(m, c, s);
      ASSERT_NE(res.outcome, CaseOutcome::kViolated) << name;
      if (res.outcome == CaseOutcome::kSkipped) {
        ++skipped;
        continue;
      }
      ++holds;
      const auto& pr = pairs[static_cast<std::size_t>(c.pair)];
      Point r1 = m.vertex(pr.r1), r2 = m.vertex(pr.r2);
      Point p1 = embiggened_apex(m, r1, r2), p2 = embiggened_apex(m, r2, r1);
      if (c.g1 == c.g2) continue;
      EXPECT_TRUE(shares_direction(c.g1, c.g2, r1, r2, p1, p2) || shares_direction(c.g2, c.g1, r1, r2, p1, p2))
          << name;
    }
  }
  EXPECT_GE(holds, 100u);
  EXPECT_GT(skipped, 0u);
}

// Grid outside the halved embiggened region --------------------------------------------

TEST(GridOutsideBad, Examples) {
  auto m = fx("channel");
  auto pairs = opposite_reflex_pairs(m);
  Scalar s = lp(m, -3), alpha = lp(m, -7);
  auto spec = grid_spec(m, 9);
  Point r1 = m.vertex(pairs[0].r1), r2 = m.vertex(pairs[0].r2);
  // Far from the line.
  EXPECT_EQ(evaluate_grid_outside_case(spec, m, Point(3, 2), 0, alpha, s).outcome, CaseOutcome::kHolds);
  // Exactly on the s-boundary of the wedge at r1.
  Point u = r1 - r2;
  Point on = r1 + q(1, 2) * u + Scalar(s / 2) * perp(u);
  ASSERT_FALSE(in_bad_region(m, bad_region(m, pairs[0], s), on));
  EXPECT_EQ(evaluate_grid_outside_case(spec, m, on, 0, alpha, s).outcome, CaseOutcome::kHolds);
  // Just inside the region: hypothesis unmet.
  Point in = r1 + q(1, 2) * u + Scalar(s / 4) * perp(u);
  EXPECT_EQ(evaluate_grid_outside_case(spec, m, in, 0, alpha, s).outcome, CaseOutcome::kSkipped);
  // Scaled parameters are not the lemma's regime.
  EXPECT_EQ(evaluate_grid_outside_case(spec, m, on, 0, lp(m, -2), s).outcome, CaseOutcome::kSkipped);
}

TEST(GridOutsideBad, HundredConformingSamples) {
  std::size_t checked = 0;
  for (const auto& name : {"channel", "deshpande", "hub"}) {
    auto m = fx(name);
    LabParams p;
    p.samples = 120;
    auto r = check_grid_outside_bad(m, p);
    EXPECT_NE(r.status(), LemmaStatus::kViolated) << name;
    checked += r.instances_checked;
  }
  EXPECT_GE(checked, 100u);
}

// Suite --------------------------------------------------------------------------------

TEST(Suite, FixedOrderAndDeterministic) {
  auto m = fx("channel");
  LabParams p;
  p.samples = 20;
  auto a = run_lemma_suite(m, p);
  auto b = run_lemma_suite(m, p);
  std::vector<std::string> ids;
  for (const auto& r : a) ids.push_back(r.lemma_id);
  EXPECT_EQ(ids, (std::vector<std::string>{"distances", "limited_blocking", "cone_property", "local_visibility",
                                           "grid_outside_bad", "small_triangle"}));
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(a.back().status(), LemmaStatus::kSkipped);
  for (const auto& r : a) EXPECT_NE(r.status(), LemmaStatus::kViolated) << r.lemma_id;
}

TEST(LocalVisibility, InsideBadRegionsFailsOnDeshpande) {
  PolygonModel m = fx("deshpande");
  LemmaReport r = check_local_visibility_in_bad_regions(m);
  EXPECT_EQ(r.status(), LemmaStatus::kViolated);
  EXPECT_GT(r.instances_checked, 0u);
  auto pair = opposite_reflex_pairs(m).front();
  BadRegion region = bad_region(m, pair, lp(m, -3));
  for (const auto& v : r.violations) {
    ASSERT_GE(v.witness.size(), 3u);
    const Point& x = v.witness[0];
    const Point& hole = v.witness[1];
    EXPECT_TRUE(in_bad_region(m, region, x));
    EXPECT_TRUE(sees(m, x, hole));
    for (std::size_t k = 2; k < v.witness.size(); ++k) EXPECT_FALSE(sees(m, v.witness[k], hole));
  }
  EXPECT_EQ(check_local_visibility_in_bad_regions(fx("square")).status(), LemmaStatus::kSkipped);
}

TEST(LabParams, TheoryParametersMeetTheRegime) {
  LabParams p = theory_params();
  for (const auto& name : fixture_names()) {
    PolygonModel m = fx(name);
    Scalar s = lab_s(m, p);
    EXPECT_LT(s, lp(m, -9));
    EXPECT_GT(s, lp(m, -10));
    EXPECT_TRUE(in_lemma_regime(m, lp(m, -11), s)) << name;
    // A power-of-L s at the same alpha would miss the regime one way or the other.
    EXPECT_FALSE(in_lemma_regime(m, lp(m, -11), lp(m, -10))) << name;
  }
  PolygonModel d = fx("deshpande");
  for (const LemmaReport& r : run_lemma_suite(d, theory_params(20)))
    EXPECT_NE(r.status(), LemmaStatus::kViolated) << r.lemma_id;
}
