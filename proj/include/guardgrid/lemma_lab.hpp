#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "guardgrid/grid_guards.hpp"

namespace gg {

enum class LemmaStatus { kVerified, kViolated, kSkipped };
std::string to_string(LemmaStatus s);

struct LemmaFinding {
  std::string instance;        // human-readable description of the configuration
  std::vector<Point> witness;  // points that let the failure be re-checked
  std::string detail;
};

struct LemmaReport {
  std::string lemma_id;
  std::size_t instances_checked = 0;  // configurations meeting every hypothesis
  std::size_t skipped = 0;            // generated but failing some hypothesis
  std::vector<LemmaFinding> violations;
  /// Failures outside the lemma's hypotheses. They show why a hypothesis is
  /// needed and never count as violations.
  std::vector<LemmaFinding> demonstrations;
  /// Named extreme values seen while checking, e.g. the smallest distance.
  std::vector<std::pair<std::string, Scalar>> measurements;
  std::vector<std::string> notes;

  /// Violated if any violation, Verified if something was checked, else Skipped.
  LemmaStatus status() const;
  const Scalar* measurement(const std::string& name) const;
};

/// Deterministic JSON (one object, keys in fixed order).
std::string to_json(const LemmaReport& report);
std::string to_json(const std::vector<LemmaReport>& reports);

/// Exponents for the parameter regime s = L^-s_exp, alpha = L^-alpha_exp,
/// grid width L^-grid_exp.
struct LabParams {
  int s_exponent = 3;
  int alpha_exponent = 7;
  int grid_exponent = 9;
  int samples = 100;
  std::uint64_t seed = 1;
  /// Use s = L^-s_exponent (1 - 1/L), strictly below the power.
  bool s_just_below = false;
};

/// The s the lab uses for `params` on m.
Scalar lab_s(const PolygonModel& m, const LabParams& params);

/// Parameters of the grid-replacement theorem: alpha = L^-11, s just below
/// L^-9, grid L^-11.
LabParams theory_params(int samples = 100, std::uint64_t seed = 1);

/// s <= L^-3, alpha <= L^-7 and 16 L alpha <= s.
bool in_lemma_regime(const PolygonModel& m, const Scalar& alpha, const Scalar& s);

/// Items 1-7 on every line through two vertices. Bounds are compared in
/// squared form; measurements "item1", "item2", "item4", "item5" hold the
/// smallest squared positive distance found, "item6" the smallest
/// cross^2/dot^2. Item 3 is mostly settled by a denominator bound, so its
/// measurement only covers crossings that needed the exact distance.
LemmaReport check_distance_lemma(const PolygonModel& m, int item7_samples = 200, std::uint64_t seed = 1);

// Limited blocking ----------------------------------------------------------

struct BlockingCase {
  Point x, g;
  int q = -1;  // vertex indices
  int r1 = -1, r2 = -1;
};

enum class CaseOutcome { kSkipped, kHolds, kViolated };

struct BlockingResult {
  CaseOutcome outcome = CaseOutcome::kSkipped;
  std::string unmet;  // first failed hypothesis when skipped
  std::optional<Point> p;
};

/// Checks the hypotheses for one configuration and, when they hold, whether
/// p = l(g,q) cap seg(r1,r2) lies within L^-2 of r2.
BlockingResult evaluate_blocking_case(const PolygonModel& m, const BlockingCase& c, const Scalar& alpha);

/// Places x just beside the extension of seg(r2, q) beyond a reflex vertex q
/// and pairs it with every alpha-grid* point. Deterministic for a seed.
std::vector<BlockingCase> generate_blocking_cases(const PolygonModel& m, const LabParams& params = {});
LemmaReport check_limited_blocking(const PolygonModel& m, const LabParams& params = {});

// Cone property ---------------------------------------------------------------

struct ConeCase {
  Point g1, g2;
  int pair = -1;  // index into opposite_reflex_pairs
};

/// Holds when, under one of the two ways of naming the points, ray(g1, p1)
/// and ray(g2, p2) share no point; p_i are the embiggened apexes.
BlockingResult evaluate_cone_case(const PolygonModel& m, const ConeCase& c, const Scalar& s);

/// Closed rays a->through_a and b->through_b share a point.
bool rays_intersect(const Point& a, const Point& through_a, const Point& b, const Point& through_b);

/// Two in three first points hug the wedge borders, the rest are anywhere in P;
/// the second point is within s/4 of the first.
std::vector<ConeCase> generate_cone_cases(const PolygonModel& m, const LabParams& params = {});
LemmaReport check_cone_property(const PolygonModel& m, const LabParams& params = {});

// Local visibility -----------------------------------------------------------

/// A point of Vis(x) seen by none of the guards, if any. Exact face check.
std::optional<Point> uncovered_point(const PolygonModel& m, const Point& x, const std::vector<Point>& guards);

/// Vis(x) against the union over alpha-grid*(x). Parameters outside the
/// regime are allowed and noted; a failure then, or for x inside an s-bad
/// region, is a demonstration rather than a violation.
/// Throws PointOutsidePolygon.
LemmaReport check_local_visibility(const PolygonModel& m, const Point& x, const Scalar& alpha, const Scalar& s);
LemmaReport check_local_visibility(const GridSpec& spec, const PolygonModel& m, const Point& x, const Scalar& alpha,
                                   const Scalar& s);

/// samples/10 (at least one) random points of P, merged into one report.
LemmaReport check_local_visibility_sample(const PolygonModel& m, const LabParams& params = {});

/// Containment without the bad-region exclusion: x is placed inside the
/// s-bad regions, just beside each extension beyond its reflex vertices, at
/// distance about alpha/4 from it. Every failure is a violation of that
/// stronger claim; the deshpande fixture is built to produce one.
LemmaReport check_local_visibility_in_bad_regions(const PolygonModel& m, const LabParams& params = {});

/// Grid of width at most alpha * L^-2 used when none is given.
GridSpec default_grid_for(const PolygonModel& m, const Scalar& alpha);

// Grid points outside the halved embiggened region -----------------------------

/// For x outside the s-bad region of a pair, seeing both reflex vertices from
/// at least L^-1 away: no alpha-grid point of x is in the embiggened
/// (s/2)-bad region.
BlockingResult evaluate_grid_outside_case(const GridSpec& spec, const PolygonModel& m, const Point& x, int pair,
                                          const Scalar& alpha, const Scalar& s);
LemmaReport check_grid_outside_bad(const PolygonModel& m, const LabParams& params = {});

// Counterexample ---------------------------------------------------------------

/// Pinhole polygon: reflex vertices (10,6) and (11,6) on l: y = 6, the far
/// wall x = 21 holding t = (21,6). Approach points a_i = (5, 6 - 2^-i L^-3).
struct CounterexampleFixture {
  PolygonModel polygon;
  Point target;
  std::array<int, 2> opposite_pair{};
  std::array<Point, 2> wall;  // bottom and top of the wall edge
  std::vector<Point> approach;  // a_1 .. a_imax
  /// Visible part of the wall from each a_i, as (low, high) y values.
  std::vector<std::pair<Scalar, Scalar>> intervals;
  bool none_sees_target = false;
  bool intervals_disjoint = false;
};

Point approach_point(const PolygonModel& m, int i);

/// Throws InvalidArgument for i_max < 1.
CounterexampleFixture build_counterexample(int i_max);

/// Visible pieces of the wall from p, as merged (low, high) y intervals.
std::vector<std::pair<Scalar, Scalar>> wall_visibility(const CounterexampleFixture& f, const Point& p);

/// Everything a sees of the wall is seen by some point of c.
bool wall_covered(const CounterexampleFixture& f, const Point& a, const std::vector<Point>& c);

/// Smallest i >= 1 whose wall interval is not covered by the union of what
/// the points of c see, searching up to i_limit. Points of c must lie in the
/// approach chamber (x < 10) off l; throws InvalidArgument otherwise.
std::optional<int> first_missed_approach(const CounterexampleFixture& f, const std::vector<Point>& c,
                                         int i_limit = 4096);

/// All checks above on one polygon, run in parallel; order is fixed.
std::vector<LemmaReport> run_lemma_suite(const PolygonModel& m, const LabParams& params = {});

}  // namespace gg
