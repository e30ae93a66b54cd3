#ifndef GUARDGRID_H
#define GUARDGRID_H

/* C interface to the guardgrid core. All coordinates stay exact inside the
 * library; text crosses the boundary as JSON or "x y" lines with "p/q"
 * rationals. Strings returned through char** are owned by the caller and
 * released with gg_string_free. Functions are safe to call from several
 * threads on distinct handles. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GG_API __declspec(dllexport)
#else
#define GG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gg_status {
  GG_OK = 0,
  GG_ERR_INVALID_ARGUMENT,
  GG_ERR_PARSE,
  GG_ERR_NOT_SIMPLE,
  GG_ERR_NON_POSITIVE_COORDINATES,
  GG_ERR_DUPLICATE_VERTEX,
  GG_ERR_COLLINEAR_TRIPLE_CONSECUTIVE,
  GG_ERR_TOO_FEW_VERTICES,
  GG_ERR_POINT_OUTSIDE_POLYGON,
  GG_ERR_IDENTICAL_DIRECTION,
  GG_ERR_DEGENERATE_CONE,
  GG_ERR_NO_GRID_POINT_NEARBY,
  GG_ERR_INPUT_GUARD_OUTSIDE_POLYGON,
  GG_ERR_INFEASIBLE_WITNESS,
  GG_ERR_COMBINATORICS_BUDGET_EXCEEDED,
  GG_ERR_GENERATION_BUDGET_EXCEEDED,
  GG_ERR_IO,
  GG_ERR_ROUND_LIMIT_EXCEEDED,
  GG_ERR_INTERNAL
} gg_status;

typedef struct gg_polygon gg_polygon;
typedef struct gg_solution gg_solution;

GG_API const char* gg_version(void);
GG_API const char* gg_status_name(gg_status status);
/* Message of the last failure on the calling thread; "" if none. */
GG_API const char* gg_last_error(void);
GG_API void gg_string_free(char* s);

/* Polygons --------------------------------------------------------------- */

GG_API gg_status gg_polygon_read_file(const char* path, gg_polygon** out);
/* Plain text or JSON, detected from the first non-blank character. */
GG_API gg_status gg_polygon_parse(const char* text, gg_polygon** out);
GG_API gg_status gg_polygon_fixture(const char* name, gg_polygon** out);
/* Newline-separated built-in fixture names. */
GG_API gg_status gg_fixture_names(char** out);
GG_API gg_status gg_polygon_random(int n, long max_coord, uint64_t seed, int general_position, gg_polygon** out);
GG_API gg_status gg_polygon_comb(int prongs, gg_polygon** out);
GG_API void gg_polygon_free(gg_polygon* p);

GG_API int gg_polygon_vertex_count(const gg_polygon* p);
/* json = 0 gives the plain text format. */
GG_API gg_status gg_polygon_format(const gg_polygon* p, int json, char** out);
/* Reflex vertices, opposite pairs, extensions, general position and the
 * bad regions at s = L^-s_exponent, as JSON. */
GG_API gg_status gg_polygon_analyze(const gg_polygon* p, int s_exponent, char** json_out);

/* Solving ----------------------------------------------------------------- */

typedef enum gg_algorithm { GG_ALGO_REWEIGHT = 0, GG_ALGO_GREEDY = 1 } gg_algorithm;
typedef enum gg_strategy { GG_STRATEGY_FULL_CELL_SAMPLE = 0, GG_STRATEGY_ADAPTIVE_REFINE = 1 } gg_strategy;

typedef struct gg_solve_options {
  int grid_exponent;  /* candidates on L^-E Z^2 */
  gg_strategy strategy;
  gg_algorithm algorithm;
  int cell_depth;
  int max_rounds;
  uint64_t seed;
} gg_solve_options;

GG_API void gg_solve_options_default(gg_solve_options* opts);
/* Returns GG_OK with a solution even when the round limit was hit; check
 * gg_solution_round_limited. */
GG_API gg_status gg_solve(const gg_polygon* p, const gg_solve_options* opts, gg_solution** out);
GG_API void gg_solution_free(gg_solution* s);
GG_API size_t gg_solution_guard_count(const gg_solution* s);
GG_API int gg_solution_certified(const gg_solution* s);
GG_API int gg_solution_round_limited(const gg_solution* s);
/* Deterministic JSON with guards, tags and solver counters. */
GG_API gg_status gg_solution_json(const gg_solution* s, char** json_out);
/* Independent exact coverage check of the solution's guards. */
GG_API gg_status gg_solution_verify(const gg_polygon* p, const gg_solution* s, int* covered);

/* Wraps a guard set given as text (JSON or "x y" lines) in a solution; it is
 * certified when an exact coverage check passes. */
GG_API gg_status gg_solution_from_guards(const gg_polygon* p, const char* guards_text, gg_solution** out);

/* Guard sets as text (JSON or "x y" lines); *covered receives the verdict. */
GG_API gg_status gg_verify_guards(const gg_polygon* p, const char* guards_text, int* covered, char** json_out);

/* Lemma verification -------------------------------------------------------- */

typedef enum gg_lemma_status { GG_LEMMA_VERIFIED = 0, GG_LEMMA_VIOLATED = 1, GG_LEMMA_SKIPPED = 2 } gg_lemma_status;

typedef struct gg_lemma_options {
  /* all, distances, limited-blocking, cone-property, local-visibility,
   * grid-outside-bad, small-triangle, counterexample. NULL means all. */
  const char* check;
  /* random (default) or bad-region; only used by local-visibility. */
  const char* at;
  int s_exponent;
  int alpha_exponent;
  int grid_exponent;
  int samples;
  uint64_t seed;
  int theory; /* nonzero: alpha = L^-11, s just below L^-9, grid L^-11 */
} gg_lemma_options;

GG_API void gg_lemma_options_default(gg_lemma_options* opts);
/* *worst is VIOLATED if any report is, else VERIFIED if any is, else SKIPPED. */
GG_API gg_status gg_verify_lemmas(const gg_polygon* p, const gg_lemma_options* opts, char** json_out,
                                  gg_lemma_status* worst);

/* Rendering ------------------------------------------------------------------ */

enum {
  GG_LAYER_VISIBILITY = 1u << 0,
  GG_LAYER_BAD_REGIONS = 1u << 1,
  GG_LAYER_GRID = 1u << 2,
  GG_LAYER_WITNESSES = 1u << 3,
  GG_LAYER_GUARDS = 1u << 4
};

typedef struct gg_render_options {
  unsigned layers;  /* GG_LAYER_* bits; drawn in bit order over the outline */
  int width_px;
  int precision;
  int s_exponent;     /* bad regions */
  int grid_exponent;  /* grid sample */
  int cell_depth;
} gg_render_options;

GG_API void gg_render_options_default(gg_render_options* opts);
/* guards may be NULL. */
GG_API gg_status gg_render_svg(const gg_polygon* p, const gg_solution* guards, const gg_render_options* opts,
                               char** svg_out);
GG_API gg_status gg_write_text_file(const char* path, const char* text);

#ifdef __cplusplus
}
#endif

#endif
