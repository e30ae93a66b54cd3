#pragma once

#include <array>
#include <vector>

#include "guardgrid/polygon.hpp"

namespace gg {

/// One wedge of a bad region: the open double cone at `apex` around the
/// axis pointing away from the partner vertex, restricted to what the reflex
/// vertex sees.
struct Wedge {
  Point apex;
  Point reflex;  // the reflex vertex this wedge belongs to
  Point axis;    // reflex minus partner
  std::vector<Point> polygon;  // closure of the wedge, counterclockwise
};

struct BadRegion {
  OppositeReflexPair pair;
  Scalar s;
  bool embiggened = false;
  std::array<Wedge, 2> wedges;
};

/// Apex of the embiggened wedge at r towards partner: a point on seg(r, partner)
/// at distance at most L^-2 from r (and at least half of it).
Point embiggened_apex(const PolygonModel& m, const Point& r, const Point& partner);

BadRegion bad_region(const PolygonModel& m, const OppositeReflexPair& pair, const Scalar& s,
                     bool embiggened = false);

/// Strict membership. Throws PointOutsidePolygon for x outside P.
bool in_bad_region(const PolygonModel& m, const BadRegion& region, const Point& x);

/// Largest squared distance from a wedge polygon vertex to the extension line.
Scalar max_dist_to_supporting_line(const BadRegion& region);

struct TripleIntersection {
  std::array<int, 3> regions;  // indices into the pair list
  Point witness;
};

struct TripleReport {
  std::size_t region_count = 0;
  std::size_t faces_checked = 0;
  std::vector<TripleIntersection> triples;
  bool ok() const { return triples.empty(); }
};

/// Looks for a point of P lying in three bad regions, one face of the
/// wedge arrangement at a time.
TripleReport check_no_triple_intersection(const PolygonModel& m, const Scalar& s, bool embiggened = false);

}  // namespace gg
