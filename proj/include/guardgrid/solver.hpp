#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "guardgrid/grid_guards.hpp"

namespace gg {

enum class WitnessSource { kArrangementFace, kUserSupplied };

struct WitnessSet {
  std::vector<Point> points;
  WitnessSource source = WitnessSource::kArrangementFace;
};

/// One interior point per face of P overlaid with every candidate's
/// visibility polygon. Covering these with candidates is equivalent to
/// covering P.
WitnessSet build_witnesses(const PolygonModel& m, const std::vector<Point>& candidates);

enum class CandidateStrategy { kFullCellSample, kAdaptiveRefine };
std::string to_string(CandidateStrategy s);
CandidateStrategy parse_candidate_strategy(const std::string& text);

struct SolveConfig {
  int grid_exponent = 2;  // candidates lie on L^-E Z^2
  CandidateStrategy strategy = CandidateStrategy::kFullCellSample;
  int cell_depth = 0;     // initial sampling cells have side 2^-depth
  int max_rounds = 10000;
  std::uint64_t seed = 42;
  int weight_doubling_cap = 0;  // reweightings allowed per guess of k; 0 picks 4k log(n/k)+8
};

enum class SolveStatus { kOk, kRoundLimitExceeded };

struct SolveResult {
  GuardSet guards;
  SolveStatus status = SolveStatus::kOk;
  std::size_t candidate_count = 0;
  std::size_t witness_count = 0;
  int rounds = 0;
  bool certified = false;
  double size_bound_log = 1.0;  // 1 + ln(witness_count)
};

/// Rounded centers of the sampling cells inside P plus all vertices, sorted
/// lexicographically.
std::vector<Point> generate_candidates(const PolygonModel& m, const GridSpec& spec, int cell_depth);

/// Which witnesses each candidate sees, as bit rows.
class CoverageMatrix {
 public:
  CoverageMatrix(const PolygonModel& m, const std::vector<Point>& candidates, const std::vector<Point>& witnesses);

  std::size_t candidates() const { return rows_.size(); }
  std::size_t witnesses() const { return witnesses_; }
  bool sees(std::size_t c, std::size_t w) const { return (rows_[c][w / 64] >> (w % 64)) & 1U; }
  const std::vector<std::uint64_t>& row(std::size_t c) const { return rows_[c]; }
  /// First witness seen by no candidate, if any.
  std::optional<std::size_t> first_unseen() const;

 private:
  std::size_t witnesses_ = 0;
  std::vector<std::vector<std::uint64_t>> rows_;
};

/// Greedy set cover; ties go to the lexicographically smallest candidate.
/// Throws InfeasibleWitness when a witness is seen by no candidate.
SolveResult greedy_cover(const PolygonModel& m, const std::vector<Point>& candidates, const WitnessSet& witnesses);

/// Minimum subset of candidates covering the witnesses, or nullopt when none
/// has at most k_max points. Throws CombinatoricsBudgetExceeded past 10^7 subsets.
std::optional<GuardSet> brute_force_optimum(const PolygonModel& m, const std::vector<Point>& candidates,
                                            const WitnessSet& witnesses, int k_max);

/// Iterative reweighting with guess-and-double on k. Deterministic for a fixed seed.
SolveResult eh_solve(const PolygonModel& m, const SolveConfig& cfg);

}  // namespace gg
