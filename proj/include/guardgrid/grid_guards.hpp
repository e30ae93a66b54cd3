#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "guardgrid/polygon.hpp"

namespace gg {

/// The grid w * Z^2 restricted to P. Exponent 0 means w was given directly.
struct GridSpec {
  int exponent = 0;
  Scalar w;
};

/// w = L^-exponent.
GridSpec grid_spec(const PolygonModel& m, int exponent = 11);
/// Explicit width; 1/w must be a positive integer so polygon vertices stay on the grid.
GridSpec grid_spec_width(const Scalar& w);

bool is_grid_point(const GridSpec& spec, const Point& p);

/// Closest grid point in P, lexicographically smallest on ties.
Point round_to_grid(const GridSpec& spec, const PolygonModel& m, const Point& x);

enum class SurroundCase { kInterior, kBoundary, kCorner };
std::string to_string(SurroundCase c);

struct SurroundingGrid {
  Point center;
  SurroundCase kind = SurroundCase::kInterior;
  std::array<Point, 3> triangle;  // counterclockwise, lower side horizontal
  std::vector<Point> points;      // distinct grid points in P
  std::optional<int> starred;     // reflex vertex index within L^-1 of center
  /// How many defining points had an off-P nearest lattice point and were
  /// rounded to the nearest grid point inside P instead.
  int rerounded = 0;

  std::vector<Point> starred_points(const PolygonModel& m) const;
};

/// Vertices of the rational surrogate for the triangle inscribed in the
/// radius-alpha circle around x.
std::array<Point, 3> surrogate_triangle(const Point& x, const Scalar& alpha);

SurroundingGrid surrounding_grid(const GridSpec& spec, const PolygonModel& m, const Point& x, const Scalar& alpha);

enum class GuardTag { kOriginal, kAlphaGrid, kStarVertex, kBadRegionVertex, kSolverGreedy };
std::string to_string(GuardTag t);

struct GuardSet {
  std::vector<Point> guards;
  std::vector<GuardTag> tags;  // parallel to guards

  void add(const Point& p, GuardTag tag);
  std::size_t size() const { return guards.size(); }
};

GuardSet make_guard_set(const std::vector<Point>& points, GuardTag tag = GuardTag::kOriginal);

/// Replaces every guard by nearby grid points plus the reflex vertices needed
/// for the bad regions it lies in. Duplicates are merged, keeping the first tag.
GuardSet grid_replacement(const GridSpec& spec, const PolygonModel& m, const GuardSet& opt, const Scalar& alpha,
                          const Scalar& s);

struct CoverageResult {
  bool covered = true;
  std::optional<Point> witness;  // an unseen point when not covered
  std::size_t faces = 0;         // faces of the overlay inside P
};

/// Exact: overlays P with every guard's visibility polygon and tests one
/// interior point per face.
CoverageResult verify_coverage(const PolygonModel& m, const std::vector<Point>& guards);

}  // namespace gg
