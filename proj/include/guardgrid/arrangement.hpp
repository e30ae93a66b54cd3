#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "guardgrid/geometry.hpp"

namespace gg {

using SegmentList = std::vector<std::array<Point, 2>>;

struct ArrangementFaces {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  /// Whether the input segments form one connected graph. When they do not,
  /// helper segments are added before faces are traced and the counts above
  /// describe the augmented graph.
  bool connected = true;
  /// One point strictly inside each bounded face, never on any segment.
  std::vector<Point> representatives;
};

/// Bounded faces of the arrangement formed by the segments. Overlapping and
/// touching segments are allowed; degenerate ones are ignored.
ArrangementFaces arrangement_faces(const SegmentList& segments);

/// Appends the closed ring p0 p1 ... p0 as segments.
void append_ring(SegmentList& out, const std::vector<Point>& ring);

}  // namespace gg
