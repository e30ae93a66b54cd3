// gg: command-line front end over the guardgrid C API.
//
// Exit codes: 0 ok, 1 uncertified or internal failure, 2 input error,
// 3 budget exceeded, 4 lemma violation.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "guardgrid/guardgrid.h"
#include "json.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kInput = 2, kBudget = 3, kViolation = 4 };

struct PolyDel {
  void operator()(gg_polygon* p) const { gg_polygon_free(p); }
};
struct SolDel {
  void operator()(gg_solution* s) const { gg_solution_free(s); }
};
using Poly = std::unique_ptr<gg_polygon, PolyDel>;
using Sol = std::unique_ptr<gg_solution, SolDel>;

// Carries a status out of a subcommand.
struct Failure {
  int code;
};

int exit_for(gg_status st) {
  switch (st) {
    case GG_OK:
      return kOk;
    case GG_ERR_ROUND_LIMIT_EXCEEDED:
    case GG_ERR_COMBINATORICS_BUDGET_EXCEEDED:
    case GG_ERR_GENERATION_BUDGET_EXCEEDED:
      return kBudget;
    case GG_ERR_INTERNAL:
      return kFailure;
    default:
      return kInput;
  }
}

void check(gg_status st) {
  if (st == GG_OK) return;
  std::cerr << "gg: " << gg_last_error() << "\n";
  throw Failure{exit_for(st)};
}

[[noreturn]] void input_error(const std::string& msg) {
  std::cerr << "gg: " << msg << "\n";
  throw Failure{kInput};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  gg_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) input_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  check(gg_write_text_file(path.c_str(), text.c_str()));
}

struct Source {
  std::string input;
  std::string fixture;

  void add(CLI::App* cmd) {
    cmd->add_option("input", input, "Polygon file (plain text or JSON)");
    cmd->add_option("--fixture", fixture, "Built-in fixture instead of a file");
  }

  Poly load() const {
    gg_polygon* p = nullptr;
    if (!fixture.empty() && !input.empty()) input_error("give either an input file or --fixture, not both");
    if (!fixture.empty())
      check(gg_polygon_fixture(fixture.c_str(), &p));
    else if (input == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      check(gg_polygon_parse(ss.str().c_str(), &p));
    } else if (!input.empty())
      check(gg_polygon_read_file(input.c_str(), &p));
    else
      input_error("no polygon given (use a file, '-' or --fixture)");
    return Poly(p);
  }
};

// Theory mode pins the exponents; humane mode takes them from flags. Without
// --mode, the desk-scale defaults apply.
struct Mode {
  std::string mode;

  void add(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "theory or humane")->check(CLI::IsMember({"theory", "humane"}));
  }
  bool theory() const { return mode == "theory"; }
  bool humane() const { return mode == "humane"; }
};

unsigned parse_layers(const std::string& spec) {
  unsigned bits = 0;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item == "polygon") continue;
    if (item == "visibility")
      bits |= GG_LAYER_VISIBILITY;
    else if (item == "bad-regions")
      bits |= GG_LAYER_BAD_REGIONS;
    else if (item == "grid")
      bits |= GG_LAYER_GRID;
    else if (item == "witnesses")
      bits |= GG_LAYER_WITNESSES;
    else if (item == "guards")
      bits |= GG_LAYER_GUARDS;
    else
      input_error("unknown layer '" + item + "'");
  }
  return bits;
}

std::string render(const gg_polygon* p, const gg_solution* s, const gg_render_options& o) {
  char* svg = nullptr;
  check(gg_render_svg(p, s, &o, &svg));
  return take(svg);
}

// solve ------------------------------------------------------------------------

struct SolveCmd {
  Source src;
  Mode mode;
  std::optional<int> grid_exponent;
  std::string strategy;
  std::string algorithm = "reweight";
  int cell_depth = 0;
  int max_rounds = 10000;
  std::uint64_t seed = 42;
  std::string output;
  std::string svg;
  std::string emit_as = "json";

  void add(CLI::App& app) {
    CLI::App* c = app.add_subcommand("solve", "Place guards and certify the cover");
    src.add(c);
    mode.add(c);
    c->add_option("-E,--grid-exponent", grid_exponent, "Candidates on the grid L^-E Z^2");
    c->add_option("--strategy", strategy, "full-cell-sample or adaptive-refine")
        ->check(CLI::IsMember({"full-cell-sample", "adaptive-refine"}));
    c->add_option("--algorithm", algorithm, "reweight or greedy")->check(CLI::IsMember({"reweight", "greedy"}));
    c->add_option("--cell-depth", cell_depth, "Initial sampling cells have side 2^-depth");
    c->add_option("--max-rounds", max_rounds, "Reweighting round limit");
    c->add_option("--seed", seed, "Random seed");
    c->add_option("-o,--output", output, "Guards file (default stdout)");
    c->add_option("--svg", svg, "Also write an SVG of the solution");
    c->add_option("--emit", emit_as, "json, text or svg")->check(CLI::IsMember({"json", "text", "svg"}));
    c->callback([this] { throw Failure{run()}; });
  }

  int run() {
    gg_solve_options o;
    gg_solve_options_default(&o);
    if (mode.theory()) {
      if (grid_exponent && *grid_exponent != 11) input_error("theory mode fixes E = 11");
      if (strategy == "full-cell-sample")
        input_error("theory mode cannot enumerate the grid; use --strategy adaptive-refine");
      o.grid_exponent = 11;
      o.strategy = GG_STRATEGY_ADAPTIVE_REFINE;
    } else {
      if (mode.humane() && !grid_exponent) input_error("humane mode needs an explicit -E");
      if (grid_exponent) o.grid_exponent = *grid_exponent;
      if (strategy == "adaptive-refine") o.strategy = GG_STRATEGY_ADAPTIVE_REFINE;
    }
    o.algorithm = algorithm == "greedy" ? GG_ALGO_GREEDY : GG_ALGO_REWEIGHT;
    o.cell_depth = cell_depth;
    o.max_rounds = max_rounds;
    o.seed = seed;

    Poly p = src.load();
    gg_solution* raw = nullptr;
    check(gg_solve(p.get(), &o, &raw));
    Sol s(raw);

    gg_render_options ro;
    gg_render_options_default(&ro);
    ro.layers = GG_LAYER_GUARDS;
    if (emit_as == "svg") {
      emit(output, render(p.get(), s.get(), ro));
    } else if (emit_as == "text") {
      char* j = nullptr;
      check(gg_solution_json(s.get(), &j));
      emit(output, guards_as_text(take(j)));
    } else {
      char* j = nullptr;
      check(gg_solution_json(s.get(), &j));
      emit(output, take(j));
    }
    if (!svg.empty()) emit(svg, render(p.get(), s.get(), ro));

    if (gg_solution_round_limited(s.get())) {
      std::cerr << "gg: round limit exceeded\n";
      return kBudget;
    }
    int covered = 0;
    check(gg_solution_verify(p.get(), s.get(), &covered));
    if (covered != gg_solution_certified(s.get())) {
      std::cerr << "gg: solver certificate disagrees with the independent coverage check\n";
      return kFailure;
    }
    if (!covered) {
      std::cerr << "gg: guards do not cover the polygon\n";
      return kFailure;
    }
    std::cerr << "gg: " << gg_solution_guard_count(s.get()) << " guards, certified\n";
    return kOk;
  }

  // "x y" lines from the guards array of the solution JSON.
  static std::string guards_as_text(const std::string& json) {
    std::string out;
    for (const auto& g : nlohmann::json::parse(json).at("guards"))
      out += g[0].get<std::string>() + " " + g[1].get<std::string>() + "\n";
    return out;
  }
};

// verify-lemmas ------------------------------------------------------------------

struct VerifyCmd {
  Source src;
  Mode mode;
  std::string check_name = "all";
  std::string at = "random";
  std::optional<int> s_exp, alpha_exp, grid_exp;
  int samples = 100;
  std::uint64_t seed = 1;
  std::string output;

  void add(CLI::App& app) {
    CLI::App* c = app.add_subcommand("verify-lemmas", "Check the lemmas on a polygon");
    src.add(c);
    mode.add(c);
    c->add_option("--check", check_name,
                  "all, distances, limited-blocking, cone-property, local-visibility, grid-outside-bad, "
                  "small-triangle or counterexample");
    c->add_option("--at", at, "random or bad-region (local visibility sample points)")
        ->check(CLI::IsMember({"random", "bad-region"}));
    c->add_option("--s-exp", s_exp, "s = L^-k");
    c->add_option("--alpha-exp", alpha_exp, "alpha = L^-k");
    c->add_option("--grid-exp", grid_exp, "grid width L^-k");
    c->add_option("--samples", samples, "Sample count per check");
    c->add_option("--seed", seed, "Random seed");
    c->add_option("-o,--output", output, "Report file (default stdout)");
    c->callback([this] { throw Failure{run()}; });
  }

  int run() {
    gg_lemma_options o;
    gg_lemma_options_default(&o);
    if (mode.theory()) {
      if (s_exp || alpha_exp || grid_exp) input_error("theory mode fixes the exponents");
      o.theory = 1;
    } else {
      if (mode.humane() && !(s_exp && alpha_exp && grid_exp))
        input_error("humane mode needs --s-exp, --alpha-exp and --grid-exp");
      if (s_exp) o.s_exponent = *s_exp;
      if (alpha_exp) o.alpha_exponent = *alpha_exp;
      if (grid_exp) o.grid_exponent = *grid_exp;
    }
    o.check = check_name.c_str();
    o.at = at.c_str();
    o.samples = samples;
    o.seed = seed;

    Poly p = src.load();
    char* out = nullptr;
    gg_lemma_status worst = GG_LEMMA_SKIPPED;
    check(gg_verify_lemmas(p.get(), &o, &out, &worst));
    std::string report = take(out);
    emit(output, report);
    if (worst == GG_LEMMA_VIOLATED) {
      std::cerr << "gg: lemma violated; witnesses are in the report\n";
      return kViolation;
    }
    return kOk;
  }
};

// analyze ------------------------------------------------------------------------

struct AnalyzeCmd {
  Source src;
  int s_exp = 3;
  std::string output;
  std::string svg;

  void add(CLI::App& app) {
    CLI::App* c = app.add_subcommand("analyze", "Reflex vertices, opposite pairs, extensions, bad regions");
    src.add(c);
    c->add_option("--s-exp", s_exp, "Bad regions at s = L^-k");
    c->add_option("-o,--output", output, "Report file (default stdout)");
    c->add_option("--svg", svg, "Also write an SVG overlay of the bad regions");
    c->callback([this] { throw Failure{run()}; });
  }

  int run() {
    Poly p = src.load();
    char* out = nullptr;
    check(gg_polygon_analyze(p.get(), s_exp, &out));
    emit(output, take(out));
    if (!svg.empty()) {
      gg_render_options ro;
      gg_render_options_default(&ro);
      ro.layers = GG_LAYER_BAD_REGIONS;
      ro.s_exponent = s_exp;
      emit(svg, render(p.get(), nullptr, ro));
    }
    return kOk;
  }
};

// generate -----------------------------------------------------------------------

struct GenerateCmd {
  std::string shape;
  int prongs = 3;
  bool random = false;
  int n = 10;
  long max_coord = 30;
  std::uint64_t seed = 1;
  bool general_position = false;
  std::string format = "text";
  std::string output;

  void add(CLI::App& app) {
    CLI::App* c = app.add_subcommand("generate", "Write a polygon file");
    c->add_option("--shape", shape, "comb, or any built-in fixture name");
    c->add_option("--prongs", prongs, "Comb prongs");
    c->add_flag("--random", random, "Seeded random simple polygon");
    c->add_option("--n", n, "Vertex count for --random");
    c->add_option("--M", max_coord, "Largest coordinate for --random");
    c->add_option("--seed", seed, "Random seed");
    c->add_flag("--general-position", general_position, "Reject polygons with concurrent extensions");
    c->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    c->add_option("-o,--output", output, "Polygon file (default stdout)");
    c->callback([this] { throw Failure{run()}; });
  }

  int run() {
    if (random == !shape.empty()) input_error("give exactly one of --random or --shape");
    gg_polygon* raw = nullptr;
    if (random)
      check(gg_polygon_random(n, max_coord, seed, general_position ? 1 : 0, &raw));
    else if (shape == "comb")
      check(gg_polygon_comb(prongs, &raw));
    else
      check(gg_polygon_fixture(shape.c_str(), &raw));
    Poly p(raw);
    char* out = nullptr;
    check(gg_polygon_format(p.get(), format == "json" ? 1 : 0, &out));
    emit(output, take(out));
    return kOk;
  }
};

// render ---------------------------------------------------------------------------

struct RenderCmd {
  Source src;
  std::string guards;
  std::string layers = "guards";
  int width = 600;
  int precision = 6;
  int s_exp = 3;
  int grid_exp = 2;
  int cell_depth = 0;
  std::string output;

  void add(CLI::App& app) {
    CLI::App* c = app.add_subcommand("render", "Draw a polygon and optional guards as SVG");
    src.add(c);
    c->add_option("--guards", guards, "Guards file (solve output or \"x y\" lines)");
    c->add_option("--layers", layers, "Comma list: visibility, bad-regions, grid, witnesses, guards");
    c->add_option("--width", width, "Width in pixels");
    c->add_option("--precision", precision, "Decimal digits");
    c->add_option("--s-exp", s_exp, "Bad regions at s = L^-k");
    c->add_option("--grid-exp", grid_exp, "Grid sample on L^-k Z^2");
    c->add_option("--cell-depth", cell_depth, "Grid sample cells have side 2^-depth");
    c->add_option("-o,--output", output, "SVG file (default stdout)");
    c->callback([this] { throw Failure{run()}; });
  }

  int run() {
    Poly p = src.load();
    Sol s;
    if (!guards.empty()) {
      gg_solution* raw = nullptr;
      check(gg_solution_from_guards(p.get(), slurp(guards).c_str(), &raw));
      s.reset(raw);
    }
    gg_render_options ro;
    gg_render_options_default(&ro);
    ro.layers = parse_layers(layers);
    ro.width_px = width;
    ro.precision = precision;
    ro.s_exponent = s_exp;
    ro.grid_exponent = grid_exp;
    ro.cell_depth = cell_depth;
    emit(output, render(p.get(), s.get(), ro));
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point guards on grids: solve, verify lemmas, analyze, generate, render"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gg_version());
  SolveCmd solve;
  VerifyCmd verify;
  AnalyzeCmd analyze;
  GenerateCmd generate;
  RenderCmd render_cmd;
  solve.add(app);
  verify.add(app);
  analyze.add(app);
  generate.add(app);
  render_cmd.add(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "gg: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
