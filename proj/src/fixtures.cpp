#include "guardgrid/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "guardgrid/errors.hpp"

namespace gg {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) return 0;
  // Rejection keeps the draw unbiased.
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return r % bound;
}

namespace {

std::vector<Point> from_pairs(std::initializer_list<std::pair<long, long>> xs) {
  std::vector<Point> out;
  for (auto [x, y] : xs) out.emplace_back(x, y);
  return out;
}

}  // namespace

std::vector<Point> comb_vertices(int prongs) {
  if (prongs < 1) throw Error(ErrorCode::kInvalidArgument, "comb needs at least one prong");
  // Prongs of width 2 separated by slots of width 2, base height 2, length 6.
  const long right = 4L * prongs - 1;
  std::vector<Point> v = {Point(1, 1), Point(right, 1)};
  for (int k = prongs - 1; k >= 0; --k) {
    long x0 = 4L * k + 1, x1 = x0 + 2;
    v.emplace_back(x1, 9);
    v.emplace_back(x0, 9);
    if (k > 0) {
      v.emplace_back(x0, 3);
      v.emplace_back(x0 - 2, 3);
    }
  }
  return v;
}

std::vector<Point> channel_vertices() {
  return from_pairs({{1, 1}, {5, 1}, {7, 4}, {8, 1}, {12, 1}, {12, 7}, {8, 7}, {6, 4}, {5, 7}, {1, 7}});
}

std::vector<Point> l_shape_vertices() {
  return from_pairs({{1, 1}, {3, 1}, {3, 2}, {2, 2}, {2, 3}, {1, 3}});
}

std::vector<Point> deshpande_vertices() {
  return from_pairs(
      {{1, 1}, {9, 1}, {11, 6}, {12, 1}, {21, 1}, {21, 11}, {12, 11}, {10, 6}, {9, 11}, {1, 11}});
}

std::vector<Point> hub_vertices() {
  return from_pairs({// west arm, bottom wall with a tooth up to (8,20)
                     {3, 17}, {7, 17}, {8, 20}, {9, 17}, {14, 17}, {14, 14},
                     // south arm, left wall tooth to (20,10), right wall tooth to (20,8)
                     {17, 14}, {17, 11}, {20, 10}, {17, 9}, {17, 3}, {23, 3}, {23, 7}, {20, 8},
                     {23, 9}, {23, 14}, {26, 14}, {26, 22},
                     // diagonal arm, teeth to (32,32) and (30,30)
                     {30, 26}, {32, 32}, {34, 30}, {38, 34}, {34, 38}, {31, 35}, {30, 30},
                     {27, 31}, {22, 26}, {14, 26}, {14, 23},
                     // west arm, top wall tooth down to (10,20)
                     {11, 23}, {10, 20}, {9, 23}, {3, 23}});
}

std::vector<Point> random_polygon(int n, long max_coord, std::uint64_t seed, bool general_position,
                                  int attempts) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "n must be at least 3");
  if (max_coord < 2 || static_cast<long>(n) > max_coord * max_coord)
    throw Error(ErrorCode::kInvalidArgument, "coordinate range too small for n");
  Rng rng(seed);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Point> pts;
    std::set<std::pair<long, long>> used;
    int guard = 0;
    while (static_cast<int>(pts.size()) < n && guard++ < 100 * n) {
      long x = rng.range(1, max_coord), y = rng.range(1, max_coord);
      if (!used.insert({x, y}).second) continue;
      Point p(x, y);
      bool collinear = false;
      for (std::size_t i = 0; i < pts.size() && !collinear; ++i)
        for (std::size_t j = i + 1; j < pts.size() && !collinear; ++j)
          collinear = orient(pts[i], pts[j], p) == 0;
      if (!collinear) pts.push_back(p);
    }
    if (static_cast<int>(pts.size()) < n) continue;
    for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.below(i)]);

    // 2-opt: uncross edges until the tour is simple. Each flip shortens it.
    const std::size_t m = pts.size();
    bool changed = true;
    int flips = 0;
    while (changed && flips < 100000) {
      changed = false;
      for (std::size_t i = 0; i < m && !changed; ++i) {
        for (std::size_t j = i + 2; j < m && !changed; ++j) {
          if (i == 0 && j == m - 1) continue;
          const Point& a = pts[i];
          const Point& b = pts[i + 1];
          const Point& c = pts[j];
          const Point& d = pts[(j + 1) % m];
          if (intersect_segments(a, b, c, d).kind == SegmentHit::Kind::kNone) continue;
          std::reverse(pts.begin() + static_cast<long>(i) + 1, pts.begin() + static_cast<long>(j) + 1);
          changed = true;
          ++flips;
        }
      }
    }
    if (changed) continue;
    try {
      PolygonModel model = load_polygon(pts);
      if (general_position && !check_general_position(model).ok()) continue;
      return model.vertices();
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(ErrorCode::kGenerationBudgetExceeded,
              "no valid polygon after " + std::to_string(attempts) + " attempts");
}

std::vector<std::string> fixture_names() {
  return {"square", "triangle", "l-shape", "comb3", "channel", "deshpande", "hub"};
}

std::vector<Point> fixture_vertices(const std::string& name) {
  if (name == "square") return from_pairs({{1, 1}, {9, 1}, {9, 9}, {1, 9}});
  if (name == "triangle") return from_pairs({{1, 1}, {9, 2}, {4, 8}});
  if (name == "l-shape") return l_shape_vertices();
  if (name == "comb3") return comb_vertices(3);
  if (name == "channel") return channel_vertices();
  if (name == "deshpande") return deshpande_vertices();
  if (name == "hub") return hub_vertices();
  throw Error(ErrorCode::kInvalidArgument, "unknown fixture '" + name + "'");
}

Point random_interior_point(const PolygonModel& m, Rng& rng, long denominator) {
  long lo_x = static_cast<long>(std::floor(m.min_x())) * denominator;
  long hi_x = static_cast<long>(std::ceil(m.max_x())) * denominator;
  long lo_y = static_cast<long>(std::floor(m.min_y())) * denominator;
  long hi_y = static_cast<long>(std::ceil(m.max_y())) * denominator;
  for (int i = 0; i < 100000; ++i) {
    Point p(make_scalar(rng.range(lo_x, hi_x), denominator),
            make_scalar(rng.range(lo_y, hi_y), denominator));
    if (locate(m, p) == Location::kInside) return p;
  }
  throw Error(ErrorCode::kGenerationBudgetExceeded, "could not sample an interior point");
}

}  // namespace gg
