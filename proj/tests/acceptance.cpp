// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria. Usage: acceptance path/to/gg [criterion...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include "guardgrid/bad_regions.hpp"
#include "guardgrid/errors.hpp"
#include "guardgrid/fixtures.hpp"
#include "guardgrid/grid_guards.hpp"
#include "guardgrid/lemma_lab.hpp"
#include "guardgrid/solver.hpp"
#include "guardgrid/visibility.hpp"
#include "vis_oracle.hpp"

using namespace gg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Scalar lp(const PolygonModel& m, int e) { return pow(m.l_scalar(), e); }

Outcome fail(std::ostringstream& why) { return {false, why.str()}; }

// 1. Distance lemma on 100 random polygons, 1000 item-7 samples in total.
Outcome distances() {
  Rng rng(2024);
  std::size_t checked = 0;
  for (int k = 0; k < 100; ++k) {
    int n = static_cast<int>(rng.range(4, 14));
    long coord = rng.range(12, 50);
    PolygonModel m = load_polygon(random_polygon(n, coord, 5000 + static_cast<std::uint64_t>(k)));
    LemmaReport r = check_distance_lemma(m, 10, static_cast<std::uint64_t>(k));
    checked += r.instances_checked;
    if (r.status() != LemmaStatus::kVerified) {
      std::ostringstream why;
      why << "polygon " << k << ": " << r.violations.size() << " violations";
      if (!r.violations.empty()) why << " (" << r.violations[0].detail << ")";
      return fail(why);
    }
  }
  return {true, "100 polygons, " + std::to_string(checked) + " configurations, 1000 item-7 samples"};
}

// 2. Grid replacement keeps coverage with at most 9 guards per original guard.
Outcome grid_replacement_suite() {
  std::vector<std::pair<std::string, PolygonModel>> polys;
  for (const auto& name : fixture_names()) {
    PolygonModel m = load_polygon(fixture_vertices(name));
    if (check_general_position(m).ok()) polys.emplace_back(name, m);
  }
  for (std::uint64_t seed = 1; polys.size() < 24 && seed < 400; ++seed) {
    int n = 5 + static_cast<int>(seed % 5);
    try {
      polys.emplace_back("random(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")",
                         load_polygon(random_polygon(n, 20, seed, true)));
    } catch (const Error&) {
    }
  }
  std::size_t used = 0, sets = 0;
  for (const auto& [name, m] : polys) {
    const SolveConfig cfg;
    std::vector<Point> cands = generate_candidates(m, grid_spec(m, cfg.grid_exponent), cfg.cell_depth);
    WitnessSet w = build_witnesses(m, cands);
    std::optional<GuardSet> opt;
    try {
      opt = brute_force_optimum(m, cands, w, 3);
    } catch (const Error&) {
      continue;
    }
    if (!opt) continue;
    // The optimum and, when it differs, the greedy cover if it also has at most 3 guards.
    std::vector<GuardSet> covers = {*opt};
    SolveResult g = greedy_cover(m, cands, w);
    if (g.guards.size() <= 3 && g.guards.guards != opt->guards) covers.push_back(g.guards);
    const GridSpec spec = grid_spec(m, 13);
    const Scalar alpha = lp(m, -11), s = lp(m, -9);
    for (const GuardSet& c : covers) {
      if (!verify_coverage(m, c.guards).covered) continue;
      GuardSet rep = grid_replacement(spec, m, c, alpha, s);
      ++sets;
      std::ostringstream why;
      if (rep.size() > 9 * c.size()) {
        why << name << ": |G| = " << rep.size() << " > 9 * " << c.size();
        return fail(why);
      }
      if (!verify_coverage(m, rep.guards).covered) {
        why << name << ": replacement does not cover";
        return fail(why);
      }
    }
    ++used;
  }
  if (used < 20) {
    std::ostringstream why;
    why << "only " << used << " conforming polygons with an optimum of at most 3";
    return fail(why);
  }
  return {true, std::to_string(used) + " polygons, " + std::to_string(sets) + " covering sets"};
}

// 3. The counterexample fixture.
Outcome counterexample() {
  CounterexampleFixture f = build_counterexample(5);
  std::ostringstream why;
  if (f.intervals.size() != 5 || !f.intervals_disjoint) {
    why << "intervals not 5 pairwise disjoint";
    return fail(why);
  }
  if (!f.none_sees_target) {
    why << "some a_i sees t";
    return fail(why);
  }
  const PolygonModel& m = f.polygon;
  const Point& a3 = f.approach[2];
  const GridSpec spec = grid_spec(m, 4);
  LemmaReport r = check_local_visibility(spec, m, a3, lp(m, -2), lp(m, -3));
  std::vector<LemmaFinding> found = r.violations;
  found.insert(found.end(), r.demonstrations.begin(), r.demonstrations.end());
  if (found.empty()) {
    why << "Vis(a_3) is covered by its alpha-grid";
    return fail(why);
  }
  // Re-check the witness directly.
  const auto& wit = found.front().witness;
  const Point& hole = wit[1];
  if (!sees(m, a3, hole)) {
    why << "witness not seen by a_3";
    return fail(why);
  }
  for (std::size_t k = 2; k < wit.size(); ++k)
    if (sees(m, wit[k], hole)) {
      why << "witness seen by a grid point";
      return fail(why);
    }
  std::optional<int> miss = first_missed_approach(f, surrounding_grid(spec, m, a3, lp(m, -2)).starred_points(m));
  if (!miss) {
    why << "alpha-grid(a_3) covers every approach interval";
    return fail(why);
  }
  return {true, "5 disjoint intervals, t unseen, a_3 sees " + to_string(hole.x()) + "," + to_string(hole.y()) +
                    " which no point of C sees; first missed a_" + std::to_string(*miss)};
}

// 4. Local visibility outside bad regions, 50 points per fixture.
Outcome local_visibility() {
  std::size_t total = 0;
  for (const auto& name : fixture_names()) {
    PolygonModel m = load_polygon(fixture_vertices(name));
    const Scalar alpha = lp(m, -7), s = lp(m, -3);
    if (!in_lemma_regime(m, alpha, s)) {
      std::ostringstream why;
      why << name << ": humane exponents outside the regime";
      return fail(why);
    }
    const GridSpec spec = grid_spec(m, 9);
    Rng rng(77);
    std::size_t checked = 0;
    for (int attempt = 0; checked < 50 && attempt < 500; ++attempt) {
      LemmaReport r = check_local_visibility(spec, m, random_interior_point(m, rng, 1000), alpha, s);
      if (!r.violations.empty()) {
        std::ostringstream why;
        why << name << ": " << r.violations[0].instance;
        return fail(why);
      }
      checked += r.instances_checked;
    }
    if (checked < 50) {
      std::ostringstream why;
      why << name << ": only " << checked << " points outside bad regions";
      return fail(why);
    }
    total += checked;
  }
  return {true, std::to_string(total) + " points on " + std::to_string(fixture_names().size()) + " fixtures, 0 violations"};
}

// 5. No point in three bad regions under general position; the hub breaks it.
Outcome no_triple() {
  std::vector<std::pair<std::string, PolygonModel>> polys;
  for (const auto& name : fixture_names()) {
    PolygonModel m = load_polygon(fixture_vertices(name));
    if (check_general_position(m).ok() && opposite_reflex_pairs(m).size() >= 3) polys.emplace_back(name, m);
  }
  for (std::uint64_t seed = 1; polys.size() < 4 && seed < 200; ++seed) {
    try {
      PolygonModel m = load_polygon(random_polygon(14, 40, seed, true));
      if (opposite_reflex_pairs(m).size() >= 3) polys.emplace_back("random(seed=" + std::to_string(seed) + ")", m);
    } catch (const Error&) {
    }
  }
  std::ostringstream why;
  if (polys.empty()) {
    why << "no general-position polygon with 3 opposite pairs";
    return fail(why);
  }
  std::size_t faces = 0;
  for (const auto& [name, m] : polys) {
    TripleReport r = check_no_triple_intersection(m, lab_s(m, theory_params()));
    faces += r.faces_checked;
    if (!r.ok()) {
      why << name << ": " << r.triples.size() << " triple intersections";
      return fail(why);
    }
  }
  PolygonModel hub = load_polygon(fixture_vertices("hub"));
  TripleReport h = check_no_triple_intersection(hub, make_scalar(1, 4));
  if (h.ok()) {
    why << "hub with s = 1/4 reports no triple";
    return fail(why);
  }
  return {true, std::to_string(polys.size()) + " polygons empty (" + std::to_string(faces) + " faces); hub: " +
                    std::to_string(h.triples.size()) + " triples"};
}

// 6. Both solvers certify; greedy within (1 + ln W) of the optimum; comb3 gives 3.
Outcome solvers() {
  std::ostringstream detail;
  for (const auto& name : fixture_names()) {
    PolygonModel m = load_polygon(fixture_vertices(name));
    SolveConfig cfg;
    SolveResult eh = eh_solve(m, cfg);
    std::vector<Point> cands = generate_candidates(m, grid_spec(m, cfg.grid_exponent), cfg.cell_depth);
    WitnessSet w = build_witnesses(m, cands);
    SolveResult gr = greedy_cover(m, cands, w);
    std::ostringstream why;
    for (const auto* r : {&eh, &gr}) {
      if (!r->certified || !verify_coverage(m, r->guards.guards).covered) {
        why << name << ": " << (r == &eh ? "reweighting" : "greedy") << " cover not certified";
        return fail(why);
      }
    }
    std::optional<GuardSet> opt;
    try {
      opt = brute_force_optimum(m, cands, w, 3);
    } catch (const Error&) {
    }
    if (opt) {
      double bound = (1.0 + std::log(static_cast<double>(w.points.size()))) * static_cast<double>(opt->size());
      if (static_cast<double>(gr.guards.size()) > bound) {
        why << name << ": greedy " << gr.guards.size() << " > " << bound;
        return fail(why);
      }
    }
    if (name == "comb3" && (!opt || opt->size() != 3 || eh.guards.size() != 3 || gr.guards.size() != 3)) {
      why << "comb3: reweighting " << eh.guards.size() << ", greedy " << gr.guards.size() << ", optimum "
          << (opt ? std::to_string(opt->size()) : "none");
      return fail(why);
    }
    detail << name << " " << eh.guards.size() << "/" << gr.guards.size() << (opt ? "/" + std::to_string(opt->size()) : "")
           << " ";
  }
  return {true, "reweight/greedy/optimum: " + detail.str()};
}

// 7. visibility_polygon against the O(n^2) oracle on 200 instances.
Outcome visibility_oracle() {
  int instances = 0;
  for (std::uint64_t seed = 1; instances < 200; ++seed) {
    Rng rng(seed * 104729);
    int n = 4 + static_cast<int>(seed % 11);
    PolygonModel m = load_polygon(random_polygon(n, 30, 9000 + seed));
    Point x = seed % 4 == 0 ? m.vertex(static_cast<int>(seed % static_cast<std::uint64_t>(n)))
                            : random_interior_point(m, rng, 17);
    VisibilityPolygon vis = visibility_polygon(m, x);
    Scalar diff = oracle::twice_symmetric_difference(vis.boundary, oracle::naive_visibility(m, x));
    if (diff != 0) {
      std::ostringstream why;
      why << "seed " << seed << ": symmetric difference " << to_string(diff / 2);
      return fail(why);
    }
    ++instances;
  }
  return {true, "200 instances, symmetric difference 0"};
}

// 8. Two CLI solve runs give identical bytes.
Outcome determinism(const std::string& gg) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("gg_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::ostringstream why;
  std::size_t bytes = 0;
  for (const char* fixture : {"comb3", "channel"}) {
    std::string outs[2];
    for (int run = 0; run < 2; ++run) {
      fs::path out = dir / (std::string(fixture) + std::to_string(run) + ".json");
      std::string cmd = "\"" + gg + "\" solve --fixture " + fixture + " --seed 11 -o \"" + out.string() + "\" 2>/dev/null";
      int rc = std::system(cmd.c_str());
      if (rc != 0) {
        why << fixture << ": gg solve exited with " << rc;
        fs::remove_all(dir);
        return fail(why);
      }
      outs[run] = read(out);
    }
    if (outs[0].empty() || outs[0] != outs[1]) {
      why << fixture << ": outputs differ";
      fs::remove_all(dir);
      return fail(why);
    }
    bytes += outs[0].size();
  }
  fs::remove_all(dir);
  return {true, "comb3 and channel, " + std::to_string(bytes) + " bytes identical"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance path/to/gg [criterion...]\n";
    return 64;
  }
  const std::string gg = argv[1];
  std::set<int> only;
  for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));

  struct Criterion {
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"distance lemma", 60, distances},
      {"grid replacement", 300, grid_replacement_suite},
      {"counterexample", 30, counterexample},
      {"local visibility", 300, local_visibility},
      {"no triple bad regions", 120, no_triple},
      {"solver soundness", 300, solvers},
      {"visibility oracle", 180, visibility_oracle},
      {"determinism", 120, [&] { return determinism(gg); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > criteria[i].limit_s) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs of %.0fs", secs, criteria[i].limit_s);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].name << "): " << o.detail
              << " [" << buf << "]" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed;
}
