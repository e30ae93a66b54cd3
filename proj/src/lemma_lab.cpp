#include "guardgrid/lemma_lab.hpp"

#include <algorithm>
#include <map>

#include "guardgrid/arrangement.hpp"
#include "guardgrid/bad_regions.hpp"
#include "guardgrid/errors.hpp"
#include "guardgrid/fixtures.hpp"
#include "guardgrid/parallel.hpp"
#include "guardgrid/visibility.hpp"
#include "json.hpp"

namespace gg {

namespace {

std::string str(const Point& p) { return "(" + to_string(p.x()) + "," + to_string(p.y()) + ")"; }

Scalar lpow(const PolygonModel& m, int e) { return pow(m.l_scalar(), e); }

void track_min(LemmaReport& r, const std::string& name, const Scalar& v) {
  for (auto& [k, value] : r.measurements)
    if (k == name) {
      if (v < value) value = v;
      return;
    }
  r.measurements.emplace_back(name, v);
}

void merge_into(LemmaReport& into, const LemmaReport& from) {
  into.instances_checked += from.instances_checked;
  into.skipped += from.skipped;
  into.violations.insert(into.violations.end(), from.violations.begin(), from.violations.end());
  into.demonstrations.insert(into.demonstrations.end(), from.demonstrations.begin(), from.demonstrations.end());
  for (const auto& [k, v] : from.measurements) track_min(into, k, v);
  for (const auto& n : from.notes)
    if (std::find(into.notes.begin(), into.notes.end(), n) == into.notes.end()) into.notes.push_back(n);
}

void count(LemmaReport& r, const BlockingResult& res, const std::string& instance, std::vector<Point> witness) {
  switch (res.outcome) {
    case CaseOutcome::kSkipped:
      ++r.skipped;
      break;
    case CaseOutcome::kHolds:
      ++r.instances_checked;
      break;
    case CaseOutcome::kViolated:
      ++r.instances_checked;
      if (res.p) witness.push_back(*res.p);
      r.violations.push_back({instance, std::move(witness), res.unmet});
      break;
  }
}

BlockingResult skip(std::string why) { return {CaseOutcome::kSkipped, std::move(why), std::nullopt}; }

}  // namespace

std::string to_string(LemmaStatus s) {
  switch (s) {
    case LemmaStatus::kVerified:
      return "Verified";
    case LemmaStatus::kViolated:
      return "Violated";
    case LemmaStatus::kSkipped:
      return "Skipped";
  }
  return "Skipped";
}

LemmaStatus LemmaReport::status() const {
  if (!violations.empty()) return LemmaStatus::kViolated;
  return instances_checked > 0 ? LemmaStatus::kVerified : LemmaStatus::kSkipped;
}

const Scalar* LemmaReport::measurement(const std::string& name) const {
  for (const auto& [k, v] : measurements)
    if (k == name) return &v;
  return nullptr;
}

namespace {

nlohmann::ordered_json finding_json(const LemmaFinding& f) {
  nlohmann::ordered_json j;
  j["instance"] = f.instance;
  auto pts = nlohmann::ordered_json::array();
  for (const Point& p : f.witness) pts.push_back({to_string(p.x()), to_string(p.y())});
  j["witness"] = pts;
  j["detail"] = f.detail;
  return j;
}

nlohmann::ordered_json report_json(const LemmaReport& r) {
  nlohmann::ordered_json j;
  j["lemma_id"] = r.lemma_id;
  j["status"] = to_string(r.status());
  j["instances_checked"] = r.instances_checked;
  j["skipped"] = r.skipped;
  j["violations"] = nlohmann::ordered_json::array();
  for (const auto& f : r.violations) j["violations"].push_back(finding_json(f));
  j["demonstrations"] = nlohmann::ordered_json::array();
  for (const auto& f : r.demonstrations) j["demonstrations"].push_back(finding_json(f));
  nlohmann::ordered_json ms = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.measurements) ms[k] = to_string(v);
  j["measurements"] = ms;
  j["notes"] = r.notes;
  return j;
}

}  // namespace

std::string to_json(const LemmaReport& report) { return report_json(report).dump(2); }

std::string to_json(const std::vector<LemmaReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2);
}

bool in_lemma_regime(const PolygonModel& m, const Scalar& alpha, const Scalar& s) {
  return s <= lpow(m, -3) && alpha <= lpow(m, -7) && 16 * m.l_scalar() * alpha <= s;
}

// Distances -------------------------------------------------------------------

Scalar lab_s(const PolygonModel& m, const LabParams& params) {
  Scalar s = lpow(m, -params.s_exponent);
  if (params.s_just_below) s *= Scalar(1) - Scalar(1) / m.l_scalar();
  return s;
}

LabParams theory_params(int samples, std::uint64_t seed) {
  LabParams p;
  p.s_exponent = 9;
  p.alpha_exponent = 11;
  p.grid_exponent = 11;
  p.samples = samples;
  p.seed = seed;
  p.s_just_below = true;
  return p;
}

LemmaReport check_distance_lemma(const PolygonModel& m, int item7_samples, std::uint64_t seed) {
  LemmaReport r;
  r.lemma_id = "distances";
  const auto& vs = m.vertices();
  const Scalar l2 = lpow(m, 2), l4 = lpow(m, 4);
  auto fail = [&](const std::string& item, std::vector<Point> w, const Scalar& value) {
    r.violations.push_back({item, std::move(w), "squared value " + to_string(value)});
  };

  // Item 1.
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      Scalar d = dist_sq(vs[i], vs[j]);
      ++r.instances_checked;
      track_min(r, "item1", d);
      if (d < 1) fail("item1", {vs[i], vs[j]}, d);
    }

  std::vector<Extension> lines = extensions(m);
  auto dist_line = [](const Point& p, const DirectedLine& l) -> Scalar { return dist_sq_point_line(p, l); };

  // Item 2.
  for (const Extension& e : lines)
    for (const Point& v : vs) {
      if (orient(e.line.from(), e.line.to(), v) == 0) continue;
      Scalar d = dist_line(v, e.line);
      ++r.instances_checked;
      track_min(r, "item2", d);
      if (d * l2 < 1) fail("item2", {v, e.line.from(), e.line.to()}, d);
    }

  // Items 5 and 6, and the intersection points.
  std::vector<Point> crossings;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const DirectedLine& a = lines[i].line;
      const DirectedLine& b = lines[j].line;
      Point da = a.direction(), db = b.direction();
      Scalar c = cross(da, db);
      ++r.instances_checked;
      if (c == 0) {
        Scalar d = dist_line(b.from(), a);
        track_min(r, "item5", d);
        if (d * l2 < 1) fail("item5", {a.from(), a.to(), b.from(), b.to()}, d);
        continue;
      }
      Scalar dt = dot(da, db);
      Scalar c2 = c * c, d2 = dt * dt;
      if (d2 != 0) track_min(r, "item6", Scalar(c2 / d2));
      if (c2 * l4 < 64 * d2) fail("item6", {a.from(), a.to(), b.from(), b.to()}, Scalar(c2 / d2));
      crossings.push_back(std::get<Point>(line_intersection(a, b)));
    }
  std::sort(crossings.begin(), crossings.end(), LexLess{});
  crossings.erase(std::unique(crossings.begin(), crossings.end()), crossings.end());

  // Item 3, one crossing per task. A crossing whose coordinates share the
  // denominator D is at distance at least 1/(D |d|) from a line with integer
  // direction d it misses, so D^2 |d|^2 <= L^10 settles the bound without
  // computing the distance.
  const Scalar l10 = lpow(m, 10);
  Integer max_len = 0;
  for (const Extension& e : lines) max_len = std::max(max_len, Integer(dot(e.line.direction(), e.line.direction()).get_num()));
  std::vector<LemmaReport> part(crossings.size());
  parallel_for(crossings.size(), [&](std::size_t k) {
    const Point& p = crossings[k];
    Integer den;
    mpz_lcm(den.get_mpz_t(), p.x().get_den_mpz_t(), p.y().get_den_mpz_t());
    bool certified = Scalar(Integer(den * den * max_len)) <= l10;
    for (const Extension& e : lines) {
      if (orient(e.line.from(), e.line.to(), p) == 0) continue;
      ++part[k].instances_checked;
      if (certified) continue;
      Scalar d = dist_line(p, e.line);
      track_min(part[k], "item3", d);
      if (d * l10 < 1)
        part[k].violations.push_back({"item3", {p, e.line.from(), e.line.to()}, "squared value " + to_string(d)});
    }
  });
  for (const auto& p : part) merge_into(r, p);

  // Item 4: bucket crossings into cells of side L^-4; only neighbours can be
  // closer than that.
  const Scalar l8 = lpow(m, 8), window = lpow(m, -4);
  std::map<std::pair<Integer, Integer>, std::vector<std::size_t>> cells;
  auto cell_of = [&](const Point& p) {
    return std::make_pair(floor(Scalar(p.x() / window)), floor(Scalar(p.y() / window)));
  };
  for (std::size_t i = 0; i < crossings.size(); ++i) cells[cell_of(crossings[i])].push_back(i);
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    auto [cx, cy] = cell_of(crossings[i]);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        auto it = cells.find({Integer(cx + dx), Integer(cy + dy)});
        if (it == cells.end()) continue;
        for (std::size_t j : it->second) {
          if (j <= i) continue;
          Scalar d = dist_sq(crossings[i], crossings[j]);
          ++r.instances_checked;
          track_min(r, "item4", d);
          if (d * l8 < 1) fail("item4", {crossings[i], crossings[j]}, d);
        }
      }
  }

  // Item 7, sampled: d is the larger of the two distances, the tightest choice.
  Rng rng(seed);
  for (int k = 0; k < item7_samples && lines.size() >= 2; ++k) {
    Point a = random_interior_point(m, rng, 97);
    const DirectedLine& l1 = lines[rng.below(lines.size())].line;
    const DirectedLine& l2line = lines[rng.below(lines.size())].line;
    auto hit = line_intersection(l1, l2line);
    const Point* p = std::get_if<Point>(&hit);
    if (!p) {
      ++r.skipped;
      continue;
    }
    Scalar d = std::max(dist_line(a, l1), dist_line(a, l2line));
    Scalar got = dist_sq(a, *p);
    ++r.instances_checked;
    if (got > d * l4) fail("item7", {a, *p, l1.from(), l1.to(), l2line.from(), l2line.to()}, got);
  }
  return r;
}

// Local visibility -------------------------------------------------------------

std::optional<Point> uncovered_point(const PolygonModel& m, const Point& x, const std::vector<Point>& guards) {
  VisibilityPolygon vx = visibility_polygon(m, x);
  std::vector<VisibilityPolygon> vg(guards.size());
  parallel_for(guards.size(), [&](std::size_t i) { vg[i] = visibility_polygon(m, guards[i]); });
  SegmentList segs;
  append_ring(segs, vx.boundary);
  for (const auto& v : vg) append_ring(segs, v.boundary);
  std::vector<Point> reps = arrangement_faces(segs).representatives;
  std::sort(reps.begin(), reps.end(), LexLess{});
  for (const Point& p : reps) {
    if (!in_visibility_polygon(vx, p)) continue;
    bool seen = std::any_of(vg.begin(), vg.end(), [&](const VisibilityPolygon& v) { return in_visibility_polygon(v, p); });
    if (!seen) return p;
  }
  return std::nullopt;
}

GridSpec default_grid_for(const PolygonModel& m, const Scalar& alpha) {
  if (alpha <= 0) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  Integer inv = ceil(Scalar(1 / alpha));
  return grid_spec_width(Scalar(1) / (Scalar(inv) * lpow(m, 2)));
}

LemmaReport check_local_visibility(const PolygonModel& m, const Point& x, const Scalar& alpha, const Scalar& s) {
  return check_local_visibility(default_grid_for(m, alpha), m, x, alpha, s);
}

LemmaReport check_local_visibility(const GridSpec& spec, const PolygonModel& m, const Point& x, const Scalar& alpha,
                                   const Scalar& s) {
  if (locate(m, x) == Location::kOutside)
    throw Error(ErrorCode::kPointOutsidePolygon, "x " + str(x) + " is outside the polygon");
  LemmaReport r;
  r.lemma_id = "local_visibility";
  bool regime = in_lemma_regime(m, alpha, s);
  if (!regime) r.notes.push_back("scaled parameters outside the lemma regime");

  bool in_bad = false;
  for (const auto& pair : opposite_reflex_pairs(m))
    if (in_bad_region(m, bad_region(m, pair, s), x)) {
      in_bad = true;
      r.notes.push_back("x lies in an s-bad region");
      break;
    }

  SurroundingGrid sg = surrounding_grid(spec, m, x, alpha);
  std::vector<Point> guards = sg.starred_points(m);
  track_min(r, "grid_points", Scalar(static_cast<long>(guards.size())));
  std::optional<Point> hole = uncovered_point(m, x, guards);

  std::string instance = "x=" + str(x) + " alpha=" + to_string(alpha) + " s=" + to_string(s);
  if (regime && !in_bad) {
    ++r.instances_checked;
    if (hole) {
      std::vector<Point> w = {x, *hole};
      w.insert(w.end(), guards.begin(), guards.end());
      r.violations.push_back({instance, w, "point of Vis(x) seen by no grid point"});
    }
  } else {
    ++r.skipped;
    if (hole) {
      std::vector<Point> w = {x, *hole};
      w.insert(w.end(), guards.begin(), guards.end());
      r.demonstrations.push_back({instance, w, "containment fails outside the hypotheses"});
    }
  }
  return r;
}

namespace {

/// A point beside the extension beyond pair end `end`, at slope f * s from
/// the line, t times the pair length past the reflex vertex.
Point beside_extension(const PolygonModel& m, const OppositeReflexPair& pair, int end, const Scalar& t,
                       const Scalar& f) {
  const Point& ri = m.vertex(end == 0 ? pair.r1 : pair.r2);
  const Point& rj = m.vertex(end == 0 ? pair.r2 : pair.r1);
  Point u = ri - rj;
  return ri + t * u + Scalar(t * f) * perp(u);
}

}  // namespace

LemmaReport check_local_visibility_sample(const PolygonModel& m, const LabParams& params) {
  LemmaReport lv;
  lv.lemma_id = "local_visibility";
  const Scalar alpha = lpow(m, -params.alpha_exponent), s = lab_s(m, params);
  const GridSpec spec = grid_spec(m, params.grid_exponent);
  Rng rng(params.seed);
  int points = std::max(1, params.samples / 10);
  for (int k = 0; k < points; ++k)
    merge_into(lv, check_local_visibility(spec, m, random_interior_point(m, rng, 1000), alpha, s));
  return lv;
}

LemmaReport check_local_visibility_in_bad_regions(const PolygonModel& m, const LabParams& params) {
  LemmaReport r;
  r.lemma_id = "local_visibility_in_bad_regions";
  const Scalar alpha = lpow(m, -params.alpha_exponent), s = lab_s(m, params);
  const GridSpec spec = grid_spec(m, params.grid_exponent);
  if (!in_lemma_regime(m, alpha, s)) r.notes.push_back("scaled parameters outside the lemma regime");
  std::vector<Point> xs;
  for (const auto& pair : opposite_reflex_pairs(m)) {
    BadRegion region = bad_region(m, pair, s);
    for (int end = 0; end < 2; ++end) {
      const Point u = m.vertex(end == 0 ? pair.r1 : pair.r2) - m.vertex(end == 0 ? pair.r2 : pair.r1);
      const Scalar span = std::max(abs(u.x()), abs(u.y()));
      for (long t : {1L, 2L, 4L})
        for (int side : {-1, 1}) {
          Scalar f = Scalar(side) * alpha / (4 * t * span);
          Point x = beside_extension(m, pair, end, Scalar(t), f);
          if (locate(m, x) != Location::kInside || !in_bad_region(m, region, x)) {
            ++r.skipped;
            continue;
          }
          xs.push_back(x);
        }
    }
  }
  if (xs.empty()) r.notes.push_back("no opposite reflex pair with room beside its extension");
  std::vector<std::optional<Point>> holes(xs.size());
  std::vector<std::vector<Point>> grids(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    grids[i] = surrounding_grid(spec, m, xs[i], alpha).starred_points(m);
    holes[i] = uncovered_point(m, xs[i], grids[i]);
  });
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ++r.instances_checked;
    if (!holes[i]) continue;
    std::vector<Point> w = {xs[i], *holes[i]};
    w.insert(w.end(), grids[i].begin(), grids[i].end());
    r.violations.push_back({"x=" + str(xs[i]) + " alpha=" + to_string(alpha) + " s=" + to_string(s), w,
                            "x in a bad region sees a point no grid point sees"});
  }
  return r;
}

// Counterexample -------------------------------------------------------------

Point approach_point(const PolygonModel& m, int i) {
  Scalar delta = pow(Scalar(2), -i) * lpow(m, -3);
  return Point(Scalar(5), Scalar(6) - delta);
}

namespace {

using Intervals = std::vector<std::pair<Scalar, Scalar>>;

Intervals merge(Intervals all) {
  std::sort(all.begin(), all.end());
  Intervals merged;
  for (auto& iv : all) {
    if (!merged.empty() && iv.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  return merged;
}

Intervals seen_by(const CounterexampleFixture& f, const std::vector<Point>& c) {
  Intervals all;
  for (const Point& p : c) {
    auto v = wall_visibility(f, p);
    all.insert(all.end(), v.begin(), v.end());
  }
  return merge(std::move(all));
}

bool covers(const Intervals& merged, const Intervals& target) {
  for (const auto& [lo, hi] : target) {
    bool inside = std::any_of(merged.begin(), merged.end(),
                              [&](const auto& u) { return u.first <= lo && hi <= u.second; });
    if (!inside) return false;
  }
  return true;
}

}  // namespace

std::vector<std::pair<Scalar, Scalar>> wall_visibility(const CounterexampleFixture& f, const Point& p) {
  GridCone gc = grid_cone(f.polygon, p, f.wall[0], f.wall[1]);
  std::vector<std::pair<Scalar, Scalar>> out;
  for (const auto& piece : gc.visible) {
    Scalar lo = std::min(piece[0].y(), piece[1].y()), hi = std::max(piece[0].y(), piece[1].y());
    out.emplace_back(lo, hi);
  }
  return merge(std::move(out));
}

CounterexampleFixture build_counterexample(int i_max) {
  if (i_max < 1) throw Error(ErrorCode::kInvalidArgument, "i_max must be at least 1");
  CounterexampleFixture f;
  f.polygon = load_polygon(deshpande_vertices());
  f.target = Point(21, 6);
  f.wall = {Point(21, 1), Point(21, 11)};
  f.opposite_pair = {vertex_index(f.polygon, Point(10, 6)), vertex_index(f.polygon, Point(11, 6))};
  if (f.opposite_pair[0] > f.opposite_pair[1]) std::swap(f.opposite_pair[0], f.opposite_pair[1]);
  f.none_sees_target = true;
  for (int i = 1; i <= i_max; ++i) {
    Point a = approach_point(f.polygon, i);
    f.approach.push_back(a);
    auto vis = wall_visibility(f, a);
    if (vis.empty())
      f.intervals.emplace_back(Scalar(0), Scalar(0));
    else
      f.intervals.emplace_back(vis.front().first, vis.back().second);
    if (sees(f.polygon, a, f.target)) f.none_sees_target = false;
  }
  auto sorted = f.intervals;
  std::sort(sorted.begin(), sorted.end());
  f.intervals_disjoint = std::all_of(sorted.begin(), sorted.end(), [](const auto& iv) { return iv.first < iv.second; });
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k)
    if (sorted[k].second >= sorted[k + 1].first) f.intervals_disjoint = false;
  return f;
}

bool wall_covered(const CounterexampleFixture& f, const Point& a, const std::vector<Point>& c) {
  return covers(seen_by(f, c), wall_visibility(f, a));
}

std::optional<int> first_missed_approach(const CounterexampleFixture& f, const std::vector<Point>& c, int i_limit) {
  for (const Point& p : c)
    if (p.y() == 6 || p.x() >= 10 || locate(f.polygon, p) == Location::kOutside)
      throw Error(ErrorCode::kInvalidArgument,
                  "point " + str(p) + " is not in the approach chamber (x < 10, off the line y = 6)");
  Intervals merged = seen_by(f, c);
  for (int i = 1; i <= i_limit; ++i)
    if (!covers(merged, wall_visibility(f, approach_point(f.polygon, i)))) return i;
  return std::nullopt;
}

// Limited blocking ------------------------------------------------------------

BlockingResult evaluate_blocking_case(const PolygonModel& m, const BlockingCase& c, const Scalar& alpha) {
  if (alpha > lpow(m, -7)) return skip("alpha above L^-7");
  if (c.q < 0 || c.r1 < 0 || c.r2 < 0 || c.r1 == c.r2 || c.q == c.r1 || c.q == c.r2) return skip("bad indices");
  if (!is_reflex(m, c.q)) return skip("q is not reflex");
  if (dist_sq(c.x, c.g) > alpha * alpha) return skip("g farther than alpha from x");
  const Point& r1 = m.vertex(c.r1);
  const Point& r2 = m.vertex(c.r2);
  const Point& q = m.vertex(c.q);
  if (locate(m, c.x) == Location::kOutside || locate(m, c.g) == Location::kOutside) return skip("outside P");
  if (orient(c.x, r1, r2) == 0) return skip("degenerate cone(x)");
  if (!sees(m, c.x, r1) || !sees(m, c.x, r2)) return skip("x does not see r1 and r2");
  if (point_in_cone(c.g, cone_of(c.x, r1, r2))) return skip("g in cone(x)");
  if (orient(c.x, r2, c.g) == 0 || orient(c.x, r2, c.g) == orient(c.x, r2, r1)) return skip("g not on the side of r2");
  if (dist_sq(c.x, q) * lpow(m, 2) <= 1) return skip("dist(x,q) <= 1/L");
  if (!grid_cone(m, c.g, r1, r2).contains(q)) return skip("q not in cone(g)");
  if (c.g == q) return skip("g equals q");
  auto hit = line_intersection(DirectedLine(c.g, q), DirectedLine(r1, r2));
  const Point* p = std::get_if<Point>(&hit);
  if (!p || !on_segment(*p, r1, r2)) return skip("l(g,q) misses seg(r1,r2)");
  bool ok = dist_sq(*p, r2) * lpow(m, 4) <= 1;
  return {ok ? CaseOutcome::kHolds : CaseOutcome::kViolated, ok ? "" : "dist(p,r2) > L^-2", *p};
}

std::vector<BlockingCase> generate_blocking_cases(const PolygonModel& m, const LabParams& params) {
  const Scalar alpha = lpow(m, -params.alpha_exponent);
  const GridSpec spec = grid_spec(m, params.grid_exponent);
  std::vector<int> reflex = reflex_vertices(m);
  std::vector<BlockingCase> out;
  if (reflex.empty()) return out;
  Rng rng(params.seed);
  for (int k = 0; k < params.samples; ++k) {
    int q = reflex[rng.below(reflex.size())];
    int r2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(m.n())));
    if (r2 == q || !segment_in_polygon(m, m.vertex(q), m.vertex(r2))) continue;
    Point d = m.vertex(q) - m.vertex(r2);
    Point x0 = m.vertex(q) + make_scalar(rng.range(1, 64), 64) * d;
    if (locate(m, x0) != Location::kInside || !segment_in_polygon(m, m.vertex(q), x0)) continue;
    Scalar side = alpha * make_scalar(rng.range(1, 3) * (rng.below(2) ? 1 : -1), 4) / Scalar(ceil_sqrt(dot(d, d)));
    Point x = x0 + side * perp(d);
    if (locate(m, x) != Location::kInside) continue;
    for (const StarTriangle& t : star_triangles(m, x)) {
      int iu = vertex_index(m, t.u), iv = vertex_index(m, t.v);
      if (iu < 0 || iv < 0) continue;
      if (iu != r2 && iv != r2) continue;
      int r1 = iu == r2 ? iv : iu;
      for (const Point& g : surrounding_grid(spec, m, x, alpha).starred_points(m)) out.push_back({x, g, q, r1, r2});
    }
  }
  return out;
}

LemmaReport check_limited_blocking(const PolygonModel& m, const LabParams& params) {
  LemmaReport r;
  r.lemma_id = "limited_blocking";
  const Scalar alpha = lpow(m, -params.alpha_exponent);
  if (reflex_vertices(m).empty()) r.notes.push_back("no reflex vertex");
  std::vector<BlockingCase> flat = generate_blocking_cases(m, params);
  std::vector<BlockingResult> results(flat.size());
  parallel_for(flat.size(), [&](std::size_t i) { results[i] = evaluate_blocking_case(m, flat[i], alpha); });
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const auto& c = flat[i];
    count(r, results[i], "x=" + str(c.x) + " g=" + str(c.g) + " q=" + std::to_string(c.q),
          {c.x, c.g, m.vertex(c.q), m.vertex(c.r1), m.vertex(c.r2)});
  }
  return r;
}

// Cone property ------------------------------------------------------------------

bool rays_intersect(const Point& a, const Point& through_a, const Point& b, const Point& through_b) {
  Point da = through_a - a, db = through_b - b;
  auto on_ray = [](const Point& p, const Point& apex, const Point& dir) {
    if (dir == Point(0, 0)) return p == apex;
    return cross(dir, p - apex) == 0 && dot(dir, p - apex) >= 0;
  };
  if (da == Point(0, 0)) return on_ray(a, b, db);
  if (db == Point(0, 0)) return on_ray(b, a, da);
  Scalar den = cross(da, db);
  Point ab = b - a;
  if (den == 0) {
    if (cross(ab, da) != 0) return false;
    return on_ray(b, a, da) || on_ray(a, b, db);
  }
  Scalar t = cross(ab, db) / den, u = cross(ab, da) / den;
  return t >= 0 && u >= 0;
}

BlockingResult evaluate_cone_case(const PolygonModel& m, const ConeCase& c, const Scalar& s) {
  auto pairs = opposite_reflex_pairs(m);
  if (c.pair < 0 || c.pair >= static_cast<int>(pairs.size())) return skip("no such pair");
  if (s <= 0 || s > 1) return skip("s outside (0,1]");
  if (dist_sq(c.g1, c.g2) * 16 > s * s) return skip("dist(g1,g2) > s/4");
  if (locate(m, c.g1) == Location::kOutside || locate(m, c.g2) == Location::kOutside) return skip("outside P");
  const auto& pair = pairs[static_cast<std::size_t>(c.pair)];
  BadRegion big = bad_region(m, pair, s, true);
  if (in_bad_region(m, big, c.g1) || in_bad_region(m, big, c.g2)) return skip("g inside the embiggened region");
  const Point& r1 = m.vertex(pair.r1);
  const Point& r2 = m.vertex(pair.r2);
  if (c.g1 == c.g2) return {CaseOutcome::kHolds, "", std::nullopt};
  // The proof names the points so that the rays diverge; either naming will do.
  Point p1 = embiggened_apex(m, r1, r2), p2 = embiggened_apex(m, r2, r1);
  if (rays_intersect(c.g1, p1, c.g2, p2) && rays_intersect(c.g2, p1, c.g1, p2))
    return {CaseOutcome::kViolated, "rays meet under both namings", std::nullopt};
  return {CaseOutcome::kHolds, "", std::nullopt};
}


std::vector<ConeCase> generate_cone_cases(const PolygonModel& m, const LabParams& params) {
  auto pairs = opposite_reflex_pairs(m);
  std::vector<ConeCase> cases;
  if (pairs.empty()) return cases;
  const Scalar s = lab_s(m, params);
  const Scalar d = s / 4;
  Rng rng(params.seed);
  for (int k = 0; k < params.samples; ++k) {
    int pi = static_cast<int>(rng.below(pairs.size()));
    Point g1;
    if (rng.below(3) == 0) {
      g1 = random_interior_point(m, rng, 1000);
    } else {
      // Near the wedge border: slopes from s/2 to 4s, either side.
      Scalar f = s * make_scalar(rng.range(2, 16), 4) * (rng.below(2) ? 1 : -1);
      g1 = beside_extension(m, pairs[static_cast<std::size_t>(pi)], static_cast<int>(rng.below(2)),
                            make_scalar(rng.range(1, 128), 64), f);
    }
    Point off(d * make_scalar(rng.range(-1000, 1000), 2000), d * make_scalar(rng.range(-1000, 1000), 2000));
    cases.push_back({g1, g1 + off, pi});
  }
  return cases;
}

LemmaReport check_cone_property(const PolygonModel& m, const LabParams& params) {
  LemmaReport r;
  r.lemma_id = "cone_property";
  if (opposite_reflex_pairs(m).empty()) r.notes.push_back("no opposite reflex pair");
  const Scalar s = lab_s(m, params);
  std::vector<ConeCase> cases = generate_cone_cases(m, params);
  std::vector<BlockingResult> results(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) { results[i] = evaluate_cone_case(m, cases[i], s); });
  for (std::size_t i = 0; i < cases.size(); ++i)
    count(r, results[i], "g1=" + str(cases[i].g1) + " g2=" + str(cases[i].g2) + " pair=" + std::to_string(cases[i].pair),
          {cases[i].g1, cases[i].g2});
  return r;
}

// Grid points outside the halved embiggened region ------------------------------

BlockingResult evaluate_grid_outside_case(const GridSpec& spec, const PolygonModel& m, const Point& x, int pair,
                                          const Scalar& alpha, const Scalar& s) {
  auto pairs = opposite_reflex_pairs(m);
  if (pair < 0 || pair >= static_cast<int>(pairs.size())) return skip("no such pair");
  if (!in_lemma_regime(m, alpha, s)) return skip("parameters outside the lemma regime");
  if (locate(m, x) == Location::kOutside) return skip("x outside P");
  const auto& pr = pairs[static_cast<std::size_t>(pair)];
  const Point& r1 = m.vertex(pr.r1);
  const Point& r2 = m.vertex(pr.r2);
  if (in_bad_region(m, bad_region(m, pr, s), x)) return skip("x inside the s-bad region");
  if (!sees(m, x, r1) || !sees(m, x, r2)) return skip("x does not see both reflex vertices");
  Scalar l2 = lpow(m, 2);
  if (dist_sq(x, r1) * l2 < 1 || dist_sq(x, r2) * l2 < 1) return skip("x within 1/L of a reflex vertex");
  BadRegion half = bad_region(m, pr, s / 2, true);
  for (const Point& g : surrounding_grid(spec, m, x, alpha).points)
    if (in_bad_region(m, half, g)) return {CaseOutcome::kViolated, "grid point in the embiggened s/2 region", g};
  return {CaseOutcome::kHolds, "", std::nullopt};
}

LemmaReport check_grid_outside_bad(const PolygonModel& m, const LabParams& params) {
  LemmaReport r;
  r.lemma_id = "grid_outside_bad";
  auto pairs = opposite_reflex_pairs(m);
  if (pairs.empty()) {
    r.notes.push_back("no opposite reflex pair");
    return r;
  }
  const Scalar s = lab_s(m, params), alpha = lpow(m, -params.alpha_exponent);
  const GridSpec spec = grid_spec(m, params.grid_exponent);
  Rng rng(params.seed);
  std::vector<std::pair<Point, int>> cases;
  for (int k = 0; k < params.samples; ++k) {
    int pi = static_cast<int>(rng.below(pairs.size()));
    Point x;
    if (rng.below(4) == 0) {
      x = random_interior_point(m, rng, 1000);
    } else {
      // On the s-boundary or up to four times further out.
      Scalar f = rng.below(2) ? s : s * make_scalar(rng.range(8, 32), 8);
      if (rng.below(2)) f = -f;
      x = beside_extension(m, pairs[static_cast<std::size_t>(pi)], static_cast<int>(rng.below(2)),
                           make_scalar(rng.range(1, 128), 64), f);
    }
    cases.emplace_back(x, pi);
  }
  std::vector<BlockingResult> results(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    results[i] = evaluate_grid_outside_case(spec, m, cases[i].first, cases[i].second, alpha, s);
  });
  for (std::size_t i = 0; i < cases.size(); ++i)
    count(r, results[i], "x=" + str(cases[i].first) + " pair=" + std::to_string(cases[i].second), {cases[i].first});
  return r;
}

// Suite ---------------------------------------------------------------------------

std::vector<LemmaReport> run_lemma_suite(const PolygonModel& m, const LabParams& params) {
  const int jobs = 6;
  std::vector<LemmaReport> out(jobs);
  parallel_for(jobs, [&](std::size_t i) {
    switch (i) {
      case 0:
        out[i] = check_distance_lemma(m, params.samples, params.seed);
        break;
      case 1:
        out[i] = check_limited_blocking(m, params);
        break;
      case 2:
        out[i] = check_cone_property(m, params);
        break;
      case 3:
        out[i] = check_local_visibility_sample(m, params);
        break;
      case 4:
        out[i] = check_grid_outside_bad(m, params);
        break;
      default:
        out[i].lemma_id = "small_triangle";
        out[i].notes.push_back("needs polygons with holes; not exercised by simple polygons");
        break;
    }
  });
  return out;
}

}  // namespace gg
