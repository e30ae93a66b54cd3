#include "guardgrid/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "guardgrid/arrangement.hpp"
#include "guardgrid/errors.hpp"
#include "guardgrid/fixtures.hpp"
#include "guardgrid/parallel.hpp"
#include "guardgrid/visibility.hpp"

namespace gg {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits full_mask(std::size_t n) {
  Bits b((n + 63) / 64, ~std::uint64_t{0});
  if (n % 64) b.back() = (std::uint64_t{1} << (n % 64)) - 1;
  if (n == 0) b.clear();
  return b;
}

void or_into(Bits& acc, const Bits& row) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] |= row[i];
}

bool covers_all(const Bits& acc, const Bits& full) { return acc == full; }

std::size_t count_missing(const Bits& acc, const Bits& full) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < acc.size(); ++i) c += static_cast<std::size_t>(std::popcount(full[i] & ~acc[i]));
  return c;
}

void sort_unique(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), LexLess{});
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Drops guards, last first, whose removal keeps every witness covered.
std::vector<std::size_t> prune(const CoverageMatrix& cm, std::vector<std::size_t> chosen) {
  const Bits full = full_mask(cm.witnesses());
  std::sort(chosen.begin(), chosen.end());
  for (std::size_t k = chosen.size(); k-- > 0;) {
    Bits acc(full.size(), 0);
    for (std::size_t j = 0; j < chosen.size(); ++j)
      if (j != k) or_into(acc, cm.row(chosen[j]));
    if (covers_all(acc, full)) chosen.erase(chosen.begin() + static_cast<long>(k));
  }
  return chosen;
}

GuardSet to_guards(const std::vector<Point>& candidates, const std::vector<std::size_t>& idx) {
  GuardSet g;
  for (std::size_t i : idx) g.add(candidates[i], GuardTag::kSolverGreedy);
  return g;
}

}  // namespace

WitnessSet build_witnesses(const PolygonModel& m, const std::vector<Point>& candidates) {
  std::vector<VisibilityPolygon> vis(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) { vis[i] = visibility_polygon(m, candidates[i]); });
  SegmentList segs;
  append_ring(segs, m.vertices());
  for (const auto& v : vis) append_ring(segs, v.boundary);
  WitnessSet out;
  for (const Point& p : arrangement_faces(segs).representatives)
    if (locate(m, p) == Location::kInside) out.points.push_back(p);
  return out;
}

std::string to_string(CandidateStrategy s) {
  return s == CandidateStrategy::kFullCellSample ? "full_cell_sample" : "adaptive_refine";
}

CandidateStrategy parse_candidate_strategy(const std::string& text) {
  if (text == "full_cell_sample") return CandidateStrategy::kFullCellSample;
  if (text == "adaptive_refine") return CandidateStrategy::kAdaptiveRefine;
  throw Error(ErrorCode::kInvalidArgument, "unknown candidate strategy '" + text + "'");
}

std::vector<Point> generate_candidates(const PolygonModel& m, const GridSpec& spec, int cell_depth) {
  if (cell_depth < 0) throw Error(ErrorCode::kInvalidArgument, "cell depth must be non-negative");
  const long per = 1L << cell_depth;
  const Scalar h = make_scalar(1, per);
  const long x0 = static_cast<long>(std::floor(m.min_x())) * per, x1 = static_cast<long>(std::ceil(m.max_x())) * per;
  const long y0 = static_cast<long>(std::floor(m.min_y())) * per, y1 = static_cast<long>(std::ceil(m.max_y())) * per;
  std::vector<Point> out(m.vertices());
  for (long i = x0; i < x1; ++i)
    for (long j = y0; j < y1; ++j) {
      Point c(h * i + h / 2, h * j + h / 2);
      if (locate(m, c) == Location::kInside) out.push_back(round_to_grid(spec, m, c));
    }
  sort_unique(out);
  return out;
}

CoverageMatrix::CoverageMatrix(const PolygonModel& m, const std::vector<Point>& candidates,
                               const std::vector<Point>& witnesses)
    : witnesses_(witnesses.size()), rows_(candidates.size(), Bits((witnesses.size() + 63) / 64, 0)) {
  parallel_for(candidates.size(), [&](std::size_t c) {
    VisibilityPolygon vis = visibility_polygon(m, candidates[c]);
    for (std::size_t w = 0; w < witnesses.size(); ++w)
      if (in_visibility_polygon(vis, witnesses[w])) rows_[c][w / 64] |= std::uint64_t{1} << (w % 64);
  });
}

std::optional<std::size_t> CoverageMatrix::first_unseen() const {
  Bits acc(full_mask(witnesses_).size(), 0);
  for (const auto& r : rows_) or_into(acc, r);
  Bits full = full_mask(witnesses_);
  for (std::size_t i = 0; i < acc.size(); ++i) {
    std::uint64_t miss = full[i] & ~acc[i];
    if (miss) return i * 64 + static_cast<std::size_t>(std::countr_zero(miss));
  }
  return std::nullopt;
}

SolveResult greedy_cover(const PolygonModel& m, const std::vector<Point>& candidates, const WitnessSet& witnesses) {
  CoverageMatrix cm(m, candidates, witnesses.points);
  if (auto w = cm.first_unseen())
    throw Error(ErrorCode::kInfeasibleWitness, "witness " + std::to_string(*w) + " is seen by no candidate");
  const Bits full = full_mask(cm.witnesses());
  Bits acc(full.size(), 0);
  std::vector<std::size_t> chosen;
  while (!covers_all(acc, full)) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t c = 0; c < cm.candidates(); ++c) {
      std::size_t gain = 0;
      const Bits& r = cm.row(c);
      for (std::size_t i = 0; i < acc.size(); ++i) gain += static_cast<std::size_t>(std::popcount(r[i] & ~acc[i]));
      if (gain > best_gain || (gain == best_gain && gain > 0 && lex_compare(candidates[c], candidates[best]) < 0))
        best = c, best_gain = gain;
    }
    chosen.push_back(best);
    or_into(acc, cm.row(best));
  }
  SolveResult res;
  res.guards = to_guards(candidates, chosen);
  res.candidate_count = candidates.size();
  res.witness_count = witnesses.points.size();
  res.rounds = static_cast<int>(chosen.size());
  res.size_bound_log = 1.0 + std::log(static_cast<double>(std::max<std::size_t>(1, res.witness_count)));
  res.certified = verify_coverage(m, res.guards.guards).covered;
  return res;
}

std::optional<GuardSet> brute_force_optimum(const PolygonModel& m, const std::vector<Point>& candidates,
                                            const WitnessSet& witnesses, int k_max) {
  constexpr double kBudget = 1e7;
  CoverageMatrix cm(m, candidates, witnesses.points);
  if (witnesses.points.empty()) return GuardSet{};
  if (cm.first_unseen()) return std::nullopt;
  const std::size_t n = cm.candidates();
  const Bits full = full_mask(cm.witnesses());
  double spent = 0, binom = 1;
  for (int k = 1; k <= k_max && static_cast<std::size_t>(k) <= n; ++k) {
    binom = binom * static_cast<double>(n - static_cast<std::size_t>(k) + 1) / k;
    spent += binom;
    if (spent > kBudget)
      throw Error(ErrorCode::kCombinatoricsBudgetExceeded,
                  "more than 1e7 subsets needed at size " + std::to_string(k));
    // Depth-first over index combinations with running unions.
    std::vector<std::size_t> idx(static_cast<std::size_t>(k));
    std::vector<Bits> acc(static_cast<std::size_t>(k) + 1, Bits(full.size(), 0));
    std::size_t depth = 0;
    idx[0] = 0;
    while (true) {
      if (idx[depth] + (static_cast<std::size_t>(k) - depth) > n) {
        if (depth == 0) break;
        ++idx[--depth];
        continue;
      }
      acc[depth + 1] = acc[depth];
      or_into(acc[depth + 1], cm.row(idx[depth]));
      if (depth + 1 == static_cast<std::size_t>(k)) {
        if (covers_all(acc[depth + 1], full)) return to_guards(candidates, idx);
        ++idx[depth];
      } else {
        idx[depth + 1] = idx[depth] + 1;
        ++depth;
      }
    }
  }
  return std::nullopt;
}

SolveResult eh_solve(const PolygonModel& m, const SolveConfig& cfg) {
  SolveResult res;
  if (cfg.grid_exponent < 1) throw Error(ErrorCode::kInvalidArgument, "grid exponent must be at least 1");
  if (cfg.max_rounds <= 0) {
    res.status = SolveStatus::kRoundLimitExceeded;
    return res;
  }
  const GridSpec spec = grid_spec(m, cfg.grid_exponent);

  // Candidate refinement until every witness is seen by some candidate.
  int depth = cfg.cell_depth;
  std::vector<Point> cands = generate_candidates(m, spec, depth);
  WitnessSet witnesses;
  std::optional<CoverageMatrix> cm;
  while (true) {
    witnesses = build_witnesses(m, cands);
    cm.emplace(m, cands, witnesses.points);
    if (!cm->first_unseen()) break;
    if (++res.rounds >= cfg.max_rounds) {
      res.status = SolveStatus::kRoundLimitExceeded;
      res.candidate_count = cands.size();
      res.witness_count = witnesses.points.size();
      return res;
    }
    ++depth;
    if (cfg.strategy == CandidateStrategy::kFullCellSample) {
      std::vector<Point> finer = generate_candidates(m, spec, depth);
      cands.insert(cands.end(), finer.begin(), finer.end());
    } else {
      // Split only the cells holding unseen witnesses.
      const Integer per = Integer(1) << depth;
      const Scalar h = Scalar(1) / Scalar(per);
      Bits seen(full_mask(cm->witnesses()).size(), 0);
      for (std::size_t c = 0; c < cm->candidates(); ++c) or_into(seen, cm->row(c));
      for (std::size_t w = 0; w < witnesses.points.size(); ++w) {
        if ((seen[w / 64] >> (w % 64)) & 1U) continue;
        const Point& p = witnesses.points[w];
        cands.push_back(round_to_grid(spec, m, p));
        Scalar cx = Scalar(floor(p.x() / h)) * h, cy = Scalar(floor(p.y() / h)) * h;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            Point c(cx + h * (2 * a + 1) / 4, cy + h * (2 * b + 1) / 4);
            if (locate(m, c) == Location::kInside) cands.push_back(round_to_grid(spec, m, c));
          }
      }
    }
    sort_unique(cands);
  }

  const std::size_t n = cm->candidates();
  const Bits full = full_mask(cm->witnesses());
  res.candidate_count = n;
  res.witness_count = witnesses.points.size();
  res.size_bound_log = 1.0 + std::log(static_cast<double>(std::max<std::size_t>(1, res.witness_count)));

  Rng rng(cfg.seed);
  std::vector<std::size_t> best;
  std::size_t best_missing = full.size() * 64 + 1;
  std::vector<std::size_t> found;
  bool success = false;
  for (std::size_t k = 1; !success; k *= 2) {
    if (k >= n) {
      // The whole candidate set is a feasible net.
      found.resize(n);
      for (std::size_t i = 0; i < n; ++i) found[i] = i;
      success = true;
      break;
    }
    const double log_term = std::log2(std::max(2.0, static_cast<double>(n) / static_cast<double>(k)));
    const int cap = cfg.weight_doubling_cap > 0 ? cfg.weight_doubling_cap
                                                : static_cast<int>(4.0 * static_cast<double>(k) * log_term) + 8;
    const std::size_t net_size =
        std::min(n, k * (static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(k) + 1))) + 1));
    std::vector<int> exponent(n, 0);
    for (int it = 0; it < cap; ++it) {
      if (res.rounds >= cfg.max_rounds) {
        res.status = SolveStatus::kRoundLimitExceeded;
        res.guards = to_guards(cands, best);
        return res;
      }
      ++res.rounds;
      // Weighted sample with replacement; weights are 2^(e - max e).
      const int top = *std::max_element(exponent.begin(), exponent.end());
      std::vector<double> prefix(n);
      double total = 0;
      for (std::size_t c = 0; c < n; ++c) prefix[c] = total += std::ldexp(1.0, exponent[c] - top);
      std::vector<std::size_t> net;
      for (std::size_t d = 0; d < net_size; ++d) {
        double u = rng.unit() * total;
        net.push_back(static_cast<std::size_t>(std::upper_bound(prefix.begin(), prefix.end(), u) - prefix.begin()));
        if (net.back() >= n) net.back() = n - 1;
      }
      std::sort(net.begin(), net.end());
      net.erase(std::unique(net.begin(), net.end()), net.end());

      Bits acc(full.size(), 0);
      for (std::size_t c : net) or_into(acc, cm->row(c));
      std::size_t missing = count_missing(acc, full);
      if (missing < best_missing || (missing == best_missing && net.size() < best.size()))
        best = net, best_missing = missing;
      if (missing == 0) {
        found = net;
        success = true;
        break;
      }
      // Double the weight of everything that sees a random uncovered witness.
      std::size_t pick = static_cast<std::size_t>(rng.below(missing));
      std::size_t w = 0;
      for (std::size_t i = 0; i < full.size(); ++i) {
        std::uint64_t miss = full[i] & ~acc[i];
        auto cnt = static_cast<std::size_t>(std::popcount(miss));
        if (pick >= cnt) {
          pick -= cnt;
          continue;
        }
        for (; pick > 0; --pick) miss &= miss - 1;
        w = i * 64 + static_cast<std::size_t>(std::countr_zero(miss));
        break;
      }
      for (std::size_t c = 0; c < n; ++c)
        if (cm->sees(c, w)) ++exponent[c];
    }
  }
  res.guards = to_guards(cands, prune(*cm, found));
  res.certified = verify_coverage(m, res.guards.guards).covered;
  return res;
}

}  // namespace gg
