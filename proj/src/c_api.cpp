#include "guardgrid/guardgrid.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "guardgrid/bad_regions.hpp"
#include "guardgrid/errors.hpp"
#include "guardgrid/fixtures.hpp"
#include "guardgrid/io.hpp"
#include "guardgrid/lemma_lab.hpp"
#include "guardgrid/solver.hpp"
#include "json.hpp"

struct gg_polygon {
  gg::PolygonModel model;
};

struct gg_solution {
  gg::SolveResult result;
  gg_solve_options options;
};

namespace {

using ojson = nlohmann::ordered_json;

thread_local std::string last_error;

static_assert(static_cast<int>(gg::ErrorCode::kRoundLimitExceeded) + 1 == GG_ERR_ROUND_LIMIT_EXCEEDED);

gg_status status_of(gg::ErrorCode code) {
  // The C enum lists the codes in the same order, shifted by one for GG_OK.
  return static_cast<gg_status>(static_cast<int>(code) + 1);
}

template <typename F>
gg_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return GG_OK;
  } catch (const gg::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GG_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw gg::Error(gg::ErrorCode::kInvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gg_status make_polygon(gg_polygon** out, const std::vector<gg::Point>& vertices) {
  return guarded([&] {
    require(out, "null output handle");
    *out = nullptr;
    *out = new gg_polygon{gg::load_polygon(vertices)};
  });
}

ojson point_json(const gg::Point& p) { return ojson::array({gg::to_string(p.x()), gg::to_string(p.y())}); }

ojson points_json(const std::vector<gg::Point>& pts) {
  ojson a = ojson::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

gg::Scalar lpow(const gg::PolygonModel& m, int e) { return gg::pow(m.l_scalar(), e); }

gg::LabParams lab_params(const gg_lemma_options& o) {
  if (o.theory) return gg::theory_params(o.samples, o.seed);
  gg::LabParams p;
  p.s_exponent = o.s_exponent;
  p.alpha_exponent = o.alpha_exponent;
  p.grid_exponent = o.grid_exponent;
  p.samples = o.samples;
  p.seed = o.seed;
  return p;
}

gg::LemmaReport counterexample_report() {
  gg::LemmaReport r;
  r.lemma_id = "counterexample";
  gg::CounterexampleFixture f = gg::build_counterexample(5);
  const auto& m = f.polygon;
  r.instances_checked = 3;
  if (!f.intervals_disjoint)
    r.violations.push_back({"a_1..a_5", f.approach, "wall intervals are not pairwise disjoint"});
  if (!f.none_sees_target) r.violations.push_back({"a_1..a_5", f.approach, "some approach point sees t"});
  gg::SurroundingGrid grid = gg::surrounding_grid(gg::grid_spec(m, 4), m, f.approach[2], lpow(m, -2));
  std::vector<gg::Point> c = grid.starred_points(m);
  std::optional<int> miss = gg::first_missed_approach(f, c);
  if (miss)
    r.measurements.emplace_back("first_missed_approach", gg::Scalar(*miss));
  else
    r.violations.push_back({"C = alpha-grid(a_3)", c, "every approach interval is covered by C"});
  for (std::size_t i = 0; i < f.intervals.size(); ++i) {
    r.measurements.emplace_back("interval_" + std::to_string(i + 1) + "_low", f.intervals[i].first);
    r.measurements.emplace_back("interval_" + std::to_string(i + 1) + "_high", f.intervals[i].second);
  }
  return r;
}

std::vector<gg::LemmaReport> run_check(const gg::PolygonModel& m, const gg_lemma_options& o) {
  const std::string check = o.check ? o.check : "all";
  const std::string at = o.at ? o.at : "random";
  require(at == "random" || at == "bad-region", "--at must be random or bad-region");
  const gg::LabParams p = lab_params(o);
  if (check == "all") {
    auto all = gg::run_lemma_suite(m, p);
    if (at == "bad-region") all[3] = gg::check_local_visibility_in_bad_regions(m, p);
    return all;
  }
  if (check == "distances") return {gg::check_distance_lemma(m, p.samples, p.seed)};
  if (check == "limited-blocking") return {gg::check_limited_blocking(m, p)};
  if (check == "cone-property") return {gg::check_cone_property(m, p)};
  if (check == "grid-outside-bad") return {gg::check_grid_outside_bad(m, p)};
  if (check == "local-visibility")
    return {at == "bad-region" ? gg::check_local_visibility_in_bad_regions(m, p) : gg::check_local_visibility_sample(m, p)};
  if (check == "counterexample") return {counterexample_report()};
  if (check == "small-triangle") {
    gg::LemmaReport r;
    r.lemma_id = "small_triangle";
    r.notes.push_back("needs polygons with holes; not exercised by simple polygons");
    return {r};
  }
  throw gg::Error(gg::ErrorCode::kInvalidArgument, "unknown check '" + check + "'");
}

}  // namespace

extern "C" {

const char* gg_version(void) { return "0.1.0"; }

const char* gg_status_name(gg_status status) {
  if (status == GG_OK) return "Ok";
  if (status == GG_ERR_INTERNAL) return "Internal";
  if (status > GG_OK && status < GG_ERR_INTERNAL)
    return gg::error_code_name(static_cast<gg::ErrorCode>(static_cast<int>(status) - 1));
  return "Unknown";
}

const char* gg_last_error(void) { return last_error.c_str(); }

void gg_string_free(char* s) { std::free(s); }

gg_status gg_polygon_read_file(const char* path, gg_polygon** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    *out = new gg_polygon{gg::read_polygon(std::string(path))};
  });
}

gg_status gg_polygon_parse(const char* text, gg_polygon** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = nullptr;
    gg::PolygonFile f = gg::parse_polygon(text);
    gg::PolygonModel m = gg::load_polygon(f.vertices);
    if (f.expected_m && *f.expected_m != m.M()) throw gg::Error(gg::ErrorCode::kInvalidArgument, "metadata M mismatch");
    if (f.expected_l && *f.expected_l != m.L()) throw gg::Error(gg::ErrorCode::kInvalidArgument, "metadata L mismatch");
    *out = new gg_polygon{std::move(m)};
  });
}

gg_status gg_polygon_fixture(const char* name, gg_polygon** out) {
  std::vector<gg::Point> v;
  gg_status st = guarded([&] {
    require(name && out, "null argument");
    *out = nullptr;
    v = gg::fixture_vertices(name);
  });
  return st == GG_OK ? make_polygon(out, v) : st;
}

gg_status gg_fixture_names(char** out) {
  return guarded([&] {
    require(out, "null argument");
    std::string s;
    for (const auto& n : gg::fixture_names()) s += n + "\n";
    *out = dup(s);
  });
}

gg_status gg_polygon_random(int n, long max_coord, uint64_t seed, int general_position, gg_polygon** out) {
  std::vector<gg::Point> v;
  gg_status st = guarded([&] {
    require(out, "null argument");
    *out = nullptr;
    require(n >= 3, "a polygon needs at least 3 vertices");
    require(max_coord >= 2, "max coordinate must be at least 2");
    v = gg::random_polygon(n, max_coord, seed, general_position != 0);
  });
  return st == GG_OK ? make_polygon(out, v) : st;
}

gg_status gg_polygon_comb(int prongs, gg_polygon** out) {
  std::vector<gg::Point> v;
  gg_status st = guarded([&] {
    require(out, "null argument");
    *out = nullptr;
    require(prongs >= 1, "a comb needs at least one prong");
    v = gg::comb_vertices(prongs);
  });
  return st == GG_OK ? make_polygon(out, v) : st;
}

void gg_polygon_free(gg_polygon* p) { delete p; }

int gg_polygon_vertex_count(const gg_polygon* p) { return p ? p->model.n() : 0; }

gg_status gg_polygon_format(const gg_polygon* p, int json, char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    gg::PolygonFile f;
    f.format = json ? gg::PolygonFormat::kJson : gg::PolygonFormat::kPlainText;
    f.vertices = p->model.vertices();
    *out = dup(gg::format_polygon(f));
  });
}

gg_status gg_polygon_analyze(const gg_polygon* p, int s_exponent, char** json_out) {
  return guarded([&] {
    require(p && json_out, "null argument");
    require(s_exponent >= 1, "s exponent must be positive");
    const gg::PolygonModel& m = p->model;
    ojson j;
    j["vertices"] = m.n();
    j["M"] = m.M().get_str();
    j["L"] = m.L().get_str();
    ojson reflex = ojson::array();
    for (int r : gg::reflex_vertices(m)) reflex.push_back(r);
    j["reflex_vertices"] = reflex;
    auto pairs = gg::opposite_reflex_pairs(m);
    ojson pj = ojson::array();
    for (const auto& pr : pairs)
      pj.push_back({{"r1", pr.r1}, {"r2", pr.r2}, {"p1", point_json(m.vertex(pr.r1))}, {"p2", point_json(m.vertex(pr.r2))}});
    j["opposite_pairs"] = pj;
    ojson ex = ojson::array();
    for (const auto& e : gg::extensions(m)) ex.push_back(ojson::array({e.defining_vertices[0], e.defining_vertices[1]}));
    j["extensions"] = ex;
    gg::GeneralPositionReport gp = gg::check_general_position(m);
    ojson gpj;
    gpj["ok"] = gp.ok();
    ojson triples = ojson::array();
    for (const auto& t : gp.collinear_triples) triples.push_back(ojson::array({t[0], t[1], t[2]}));
    gpj["collinear_triples"] = triples;
    ojson conc = ojson::array();
    for (const auto& c : gp.concurrent_extensions) conc.push_back({{"point", point_json(c.point)}, {"extensions", c.extensions}});
    gpj["concurrent_extensions"] = conc;
    j["general_position"] = gpj;
    const gg::Scalar s = lpow(m, -s_exponent);
    ojson bad = ojson::array();
    for (const auto& pr : pairs) {
      gg::BadRegion region = gg::bad_region(m, pr, s);
      ojson w = ojson::array();
      for (const auto& wedge : region.wedges) w.push_back({{"apex", point_json(wedge.apex)}, {"polygon", points_json(wedge.polygon)}});
      bad.push_back({{"r1", pr.r1}, {"r2", pr.r2}, {"max_dist_sq", gg::to_string(gg::max_dist_to_supporting_line(region))}, {"wedges", w}});
    }
    j["s"] = gg::to_string(s);
    j["bad_regions"] = bad;
    *json_out = dup(j.dump(2) + "\n");
  });
}

void gg_solve_options_default(gg_solve_options* opts) {
  if (!opts) return;
  gg::SolveConfig c;
  opts->grid_exponent = c.grid_exponent;
  opts->strategy = GG_STRATEGY_FULL_CELL_SAMPLE;
  opts->algorithm = GG_ALGO_REWEIGHT;
  opts->cell_depth = c.cell_depth;
  opts->max_rounds = c.max_rounds;
  opts->seed = c.seed;
}

gg_status gg_solve(const gg_polygon* p, const gg_solve_options* opts, gg_solution** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = nullptr;
    gg_solve_options o;
    gg_solve_options_default(&o);
    if (opts) o = *opts;
    require(o.grid_exponent >= 0, "grid exponent must be non-negative");
    require(o.max_rounds > 0, "max rounds must be positive");
    gg::SolveConfig c;
    c.grid_exponent = o.grid_exponent;
    c.strategy = o.strategy == GG_STRATEGY_ADAPTIVE_REFINE ? gg::CandidateStrategy::kAdaptiveRefine
                                                           : gg::CandidateStrategy::kFullCellSample;
    c.cell_depth = o.cell_depth;
    c.max_rounds = o.max_rounds;
    c.seed = o.seed;
    gg::SolveResult r;
    if (o.algorithm == GG_ALGO_GREEDY) {
      auto cands = gg::generate_candidates(p->model, gg::grid_spec(p->model, c.grid_exponent), c.cell_depth);
      r = gg::greedy_cover(p->model, cands, gg::build_witnesses(p->model, cands));
    } else {
      r = gg::eh_solve(p->model, c);
    }
    *out = new gg_solution{std::move(r), o};
  });
}

void gg_solution_free(gg_solution* s) { delete s; }

size_t gg_solution_guard_count(const gg_solution* s) { return s ? s->result.guards.size() : 0; }

int gg_solution_certified(const gg_solution* s) { return s && s->result.certified ? 1 : 0; }

int gg_solution_round_limited(const gg_solution* s) {
  return s && s->result.status == gg::SolveStatus::kRoundLimitExceeded ? 1 : 0;
}

gg_status gg_solution_json(const gg_solution* s, char** json_out) {
  return guarded([&] {
    require(s && json_out, "null argument");
    const gg::SolveResult& r = s->result;
    ojson j;
    j["status"] = r.status == gg::SolveStatus::kOk ? "ok" : "round_limit_exceeded";
    j["certified"] = r.certified;
    j["algorithm"] = s->options.algorithm == GG_ALGO_GREEDY ? "greedy" : "reweight";
    j["strategy"] = s->options.strategy == GG_STRATEGY_ADAPTIVE_REFINE ? "adaptive-refine" : "full-cell-sample";
    j["grid_exponent"] = s->options.grid_exponent;
    j["seed"] = s->options.seed;
    j["guard_count"] = r.guards.size();
    j["guards"] = points_json(r.guards.guards);
    ojson tags = ojson::array();
    for (auto t : r.guards.tags) tags.push_back(gg::to_string(t));
    j["tags"] = tags;
    j["candidates"] = r.candidate_count;
    j["witnesses"] = r.witness_count;
    j["rounds"] = r.rounds;
    *json_out = dup(j.dump(2) + "\n");
  });
}

gg_status gg_solution_verify(const gg_polygon* p, const gg_solution* s, int* covered) {
  return guarded([&] {
    require(p && s && covered, "null argument");
    *covered = gg::verify_coverage(p->model, s->result.guards.guards).covered ? 1 : 0;
  });
}

gg_status gg_solution_from_guards(const gg_polygon* p, const char* guards_text, gg_solution** out) {
  return guarded([&] {
    require(p && guards_text && out, "null argument");
    *out = nullptr;
    gg::GuardSet g = gg::parse_guard_set(guards_text);
    for (const auto& pt : g.guards)
      if (!gg::contains(p->model, pt))
        throw gg::Error(gg::ErrorCode::kInputGuardOutsidePolygon, "guard outside the polygon");
    gg::SolveResult r;
    r.certified = gg::verify_coverage(p->model, g.guards).covered;
    r.guards = std::move(g);
    gg_solve_options o;
    gg_solve_options_default(&o);
    *out = new gg_solution{std::move(r), o};
  });
}

gg_status gg_verify_guards(const gg_polygon* p, const char* guards_text, int* covered, char** json_out) {
  return guarded([&] {
    require(p && guards_text && covered, "null argument");
    gg::GuardSet g = gg::parse_guard_set(guards_text);
    for (const auto& pt : g.guards)
      if (!gg::contains(p->model, pt))
        throw gg::Error(gg::ErrorCode::kInputGuardOutsidePolygon, "guard outside the polygon");
    gg::CoverageResult c = gg::verify_coverage(p->model, g.guards);
    *covered = c.covered ? 1 : 0;
    if (json_out) {
      ojson j;
      j["covered"] = c.covered;
      j["guards"] = g.size();
      j["faces"] = c.faces;
      if (c.witness) j["unseen"] = point_json(*c.witness);
      *json_out = dup(j.dump(2) + "\n");
    }
  });
}

void gg_lemma_options_default(gg_lemma_options* opts) {
  if (!opts) return;
  gg::LabParams p;
  opts->check = "all";
  opts->at = "random";
  opts->s_exponent = p.s_exponent;
  opts->alpha_exponent = p.alpha_exponent;
  opts->grid_exponent = p.grid_exponent;
  opts->samples = p.samples;
  opts->seed = p.seed;
  opts->theory = 0;
}

gg_status gg_verify_lemmas(const gg_polygon* p, const gg_lemma_options* opts, char** json_out,
                           gg_lemma_status* worst) {
  return guarded([&] {
    require(p && json_out && worst, "null argument");
    gg_lemma_options o;
    gg_lemma_options_default(&o);
    if (opts) o = *opts;
    require(o.samples >= 1, "samples must be positive");
    require(o.s_exponent >= 1 && o.alpha_exponent >= 1 && o.grid_exponent >= 1, "exponents must be positive");
    auto reports = run_check(p->model, o);
    bool violated = false, verified = false;
    for (const auto& r : reports) {
      violated |= r.status() == gg::LemmaStatus::kViolated;
      verified |= r.status() == gg::LemmaStatus::kVerified;
    }
    *worst = violated ? GG_LEMMA_VIOLATED : verified ? GG_LEMMA_VERIFIED : GG_LEMMA_SKIPPED;
    const gg::LabParams lp = lab_params(o);
    ojson j;
    j["mode"] = o.theory ? "theory" : "humane";
    j["s"] = gg::to_string(gg::lab_s(p->model, lp));
    j["alpha"] = gg::to_string(lpow(p->model, -lp.alpha_exponent));
    j["grid_exponent"] = lp.grid_exponent;
    j["seed"] = lp.seed;
    j["status"] = gg::to_string(violated ? gg::LemmaStatus::kViolated
                                         : verified ? gg::LemmaStatus::kVerified : gg::LemmaStatus::kSkipped);
    j["reports"] = ojson::parse(gg::to_json(reports));
    *json_out = dup(j.dump(2) + "\n");
  });
}

void gg_render_options_default(gg_render_options* opts) {
  if (!opts) return;
  opts->layers = GG_LAYER_GUARDS;
  opts->width_px = 600;
  opts->precision = 6;
  opts->s_exponent = 3;
  opts->grid_exponent = 2;
  opts->cell_depth = 0;
}

gg_status gg_render_svg(const gg_polygon* p, const gg_solution* guards, const gg_render_options* opts,
                        char** svg_out) {
  return guarded([&] {
    require(p && svg_out, "null argument");
    gg_render_options o;
    gg_render_options_default(&o);
    if (opts) o = *opts;
    require(o.width_px > 0 && o.precision >= 0 && o.precision <= 30, "bad width or precision");
    const gg::PolygonModel& m = p->model;
    gg::SceneRender scene;
    scene.polygon = m;
    scene.width_px = o.width_px;
    scene.precision = o.precision;
    if (guards) scene.guards = guards->result.guards.guards;
    if (o.layers & GG_LAYER_VISIBILITY) {
      scene.layers.push_back(gg::SceneLayer::kVisibility);
      for (const auto& g : scene.guards) scene.visibility.push_back(gg::visibility_polygon(m, g));
    }
    if (o.layers & GG_LAYER_BAD_REGIONS) {
      scene.layers.push_back(gg::SceneLayer::kBadRegions);
      for (const auto& pr : gg::opposite_reflex_pairs(m))
        scene.bad_regions.push_back(gg::bad_region(m, pr, lpow(m, -o.s_exponent)));
    }
    if (o.layers & GG_LAYER_GRID) {
      scene.layers.push_back(gg::SceneLayer::kGrid);
      scene.grid_sample = gg::generate_candidates(m, gg::grid_spec(m, o.grid_exponent), o.cell_depth);
    }
    if (o.layers & GG_LAYER_WITNESSES) {
      scene.layers.push_back(gg::SceneLayer::kWitnesses);
      scene.witnesses = gg::build_witnesses(m, scene.guards).points;
    }
    if (o.layers & GG_LAYER_GUARDS) scene.layers.push_back(gg::SceneLayer::kGuards);
    *svg_out = dup(gg::render_svg(scene));
  });
}

gg_status gg_write_text_file(const char* path, const char* text) {
  return guarded([&] {
    require(path && text, "null argument");
    gg::write_text_file(path, text);
  });
}

}  // extern "C"
