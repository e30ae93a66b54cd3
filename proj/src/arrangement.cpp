#include "guardgrid/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace gg {

void append_ring(SegmentList& out, const std::vector<Point>& ring) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back({ring[i], ring[(i + 1) % n]});
}

namespace {

struct Graph {
  std::vector<Point> points;
  std::vector<std::array<int, 2>> edges;
};

struct Box {
  double x0, x1, y0, y1;
};

Box box_of(const Point& a, const Point& b) {
  auto pad = [](double lo, double hi) { return 1e-9 * (std::fabs(lo) + std::fabs(hi)) + 1e-300; };
  double x0 = std::min(a.approx_x(), b.approx_x()), x1 = std::max(a.approx_x(), b.approx_x());
  double y0 = std::min(a.approx_y(), b.approx_y()), y1 = std::max(a.approx_y(), b.approx_y());
  double px = pad(x0, x1), py = pad(y0, y1);
  return {x0 - px, x1 + px, y0 - py, y1 + py};
}

Graph build_graph(const SegmentList& input) {
  SegmentList segs;
  for (const auto& s : input)
    if (s[0] != s[1]) segs.push_back(s);
  const std::size_t S = segs.size();
  std::vector<Box> boxes(S);
  std::vector<std::vector<Point>> cuts(S);
  for (std::size_t i = 0; i < S; ++i) {
    boxes[i] = box_of(segs[i][0], segs[i][1]);
    cuts[i] = {segs[i][0], segs[i][1]};
  }
  // Sweep on x to limit the pairwise tests.
  std::vector<std::size_t> order(S);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return boxes[a].x0 < boxes[b].x0; });
  for (std::size_t oi = 0; oi < S; ++oi) {
    std::size_t i = order[oi];
    for (std::size_t oj = oi + 1; oj < S; ++oj) {
      std::size_t j = order[oj];
      if (boxes[j].x0 > boxes[i].x1) break;
      if (boxes[j].y0 > boxes[i].y1 || boxes[i].y0 > boxes[j].y1) continue;
      SegmentHit h = intersect_segments(segs[i][0], segs[i][1], segs[j][0], segs[j][1]);
      if (h.kind == SegmentHit::Kind::kNone) continue;
      cuts[i].push_back(h.first);
      cuts[j].push_back(h.first);
      if (h.kind == SegmentHit::Kind::kOverlap) {
        cuts[i].push_back(h.second);
        cuts[j].push_back(h.second);
      }
    }
  }

  Graph g;
  std::map<Point, int, LexLess> ids;
  auto id_of = [&](const Point& p) {
    auto [it, fresh] = ids.emplace(p, static_cast<int>(g.points.size()));
    if (fresh) g.points.push_back(p);
    return it->second;
  };
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < S; ++i) {
    const Point& a = segs[i][0];
    Point d = segs[i][1] - a;
    std::vector<std::pair<Scalar, std::size_t>> keyed;
    keyed.reserve(cuts[i].size());
    for (std::size_t k = 0; k < cuts[i].size(); ++k) keyed.emplace_back(dot(cuts[i][k] - a, d), k);
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    int prev = -1;
    for (const auto& [t, k] : keyed) {
      int id = id_of(cuts[i][k]);
      if (prev >= 0 && prev != id) {
        auto key = std::minmax(prev, id);
        if (seen.insert(key).second) g.edges.push_back({key.first, key.second});
      }
      prev = id;
    }
  }
  return g;
}

int count_components(const Graph& g) {
  std::vector<int> parent(g.points.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = static_cast<int>(g.points.size());
  for (auto [a, b] : g.edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --comps;
    }
  }
  return comps;
}

// Segments that tie every component to an enclosing rectangle.
SegmentList connectors(const Graph& g) {
  std::vector<int> parent(g.points.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : g.edges) parent[find(a)] = find(b);

  Scalar x0 = g.points[0].x(), x1 = x0, y0 = g.points[0].y(), y1 = y0;
  for (const Point& p : g.points) {
    if (p.x() < x0) x0 = p.x();
    if (p.x() > x1) x1 = p.x();
    if (p.y() < y0) y0 = p.y();
    if (p.y() > y1) y1 = p.y();
  }
  x0 -= 1, x1 += 1, y0 -= 1, y1 += 1;
  SegmentList out;
  append_ring(out, {Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)});
  std::map<int, int> lowest;  // component root -> lexicographically smallest vertex
  for (int v = 0; v < static_cast<int>(g.points.size()); ++v) {
    int r = find(v);
    auto it = lowest.find(r);
    if (it == lowest.end() || lex_compare(g.points[v], g.points[it->second]) < 0) lowest[r] = v;
  }
  for (auto [root, v] : lowest) out.push_back({g.points[v], Point(g.points[v].x(), y1)});
  return out;
}

std::vector<Point> trace_faces(const Graph& g) {
  const std::size_t E = g.edges.size();
  const std::size_t H = 2 * E;
  auto origin = [&](std::size_t h) { return g.edges[h / 2][h % 2]; };
  auto dest = [&](std::size_t h) { return g.edges[h / 2][1 - h % 2]; };

  std::vector<std::vector<std::size_t>> out(g.points.size());
  for (std::size_t h = 0; h < H; ++h) out[static_cast<std::size_t>(origin(h))].push_back(h);
  std::vector<std::size_t> pos(H);
  for (auto& list : out) {
    if (list.empty()) continue;
    const Point& o = g.points[static_cast<std::size_t>(origin(list[0]))];
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return angle_compare(g.points[static_cast<std::size_t>(dest(a))] - o,
                           g.points[static_cast<std::size_t>(dest(b))] - o) < 0;
    });
    for (std::size_t k = 0; k < list.size(); ++k) pos[list[k]] = k;
  }
  auto next = [&](std::size_t h) {
    std::size_t t = h ^ 1;
    const auto& list = out[static_cast<std::size_t>(origin(t))];
    std::size_t k = list.size();
    return list[(pos[t] + k - 1) % k];
  };

  std::vector<Point> reps;
  std::vector<char> used(H, 0);
  for (std::size_t start = 0; start < H; ++start) {
    if (used[start]) continue;
    std::vector<std::size_t> cycle;
    std::size_t h = start;
    do {
      used[h] = 1;
      cycle.push_back(h);
      h = next(h);
    } while (h != start);

    Scalar area = 0;
    for (std::size_t e : cycle)
      area += cross(g.points[static_cast<std::size_t>(origin(e))], g.points[static_cast<std::size_t>(dest(e))]);
    if (area <= 0) continue;

    // Vertical line just right of the leftmost vertex column; no vertex of
    // the cycle lies on it.
    std::vector<Scalar> xs;
    for (std::size_t e : cycle) xs.push_back(g.points[static_cast<std::size_t>(origin(e))].x());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    Scalar xm = (xs[0] + xs[1]) / 2;
    std::vector<Scalar> ys;
    for (std::size_t e : cycle) {
      const Point& a = g.points[static_cast<std::size_t>(origin(e))];
      const Point& b = g.points[static_cast<std::size_t>(dest(e))];
      bool spans = (a.x() < xm && xm < b.x()) || (b.x() < xm && xm < a.x());
      if (!spans) continue;
      ys.push_back(a.y() + (xm - a.x()) * (b.y() - a.y()) / (b.x() - a.x()));
    }
    std::sort(ys.begin(), ys.end());
    for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
      if ((k + 1) % 2 == 1 && ys[k] < ys[k + 1]) {
        reps.emplace_back(xm, (ys[k] + ys[k + 1]) / 2);
        break;
      }
    }
  }
  return reps;
}

}  // namespace

ArrangementFaces arrangement_faces(const SegmentList& segments) {
  ArrangementFaces result;
  Graph g = build_graph(segments);
  if (g.points.empty()) return result;
  if (count_components(g) > 1) {
    result.connected = false;
    SegmentList all = segments;
    SegmentList extra = connectors(g);
    all.insert(all.end(), extra.begin(), extra.end());
    g = build_graph(all);
  }
  result.vertex_count = g.points.size();
  result.edge_count = g.edges.size();
  result.representatives = trace_faces(g);
  return result;
}

}  // namespace gg
