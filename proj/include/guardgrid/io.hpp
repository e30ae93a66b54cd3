#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "guardgrid/bad_regions.hpp"
#include "guardgrid/grid_guards.hpp"
#include "guardgrid/visibility.hpp"

namespace gg {

enum class PolygonFormat { kPlainText, kJson };

struct PolygonFile {
  PolygonFormat format = PolygonFormat::kPlainText;
  std::vector<Point> vertices;  // as written, before load_polygon scaling
  std::optional<std::string> name;
  std::optional<Integer> expected_m;
  std::optional<Integer> expected_l;
};

/// One "x y" pair per line; '#' starts a comment; "# name: foo", "# M: 3" and
/// "# L: 60" set metadata. Throws ParseError with the offending position.
PolygonFile parse_polygon_text(std::string_view text);
/// {"vertices": [[x, y], ...], "name": ..., "M": ..., "L": ...}. Coordinates
/// are integers or "p/q" strings.
PolygonFile parse_polygon_json(std::string_view text);
/// JSON when the first non-blank character is '{', plain text otherwise.
PolygonFile parse_polygon(std::string_view text);

std::string format_polygon_text(const PolygonFile& file);
std::string format_polygon_json(const PolygonFile& file);
std::string format_polygon(const PolygonFile& file);

/// Parses and validates through load_polygon. Metadata constants that
/// disagree with the loaded model raise InvalidArgument.
PolygonModel read_polygon(std::istream& in);
/// Throws IoError when the file cannot be read.
PolygonModel read_polygon(const std::string& path);
PolygonFile read_polygon_file(const std::string& path);
void write_polygon_file(const PolygonFile& file, const std::string& path);

/// Guard sets: {"guards": [[x, y], ...], "tags": [...]}; plain "x y" lines
/// are accepted too.
std::string format_guard_set(const GuardSet& guards);
GuardSet parse_guard_set(std::string_view text);

/// Exact decimal rounding (half away from zero) to `digits` places.
std::string fixed_decimal(const Scalar& v, int digits);

enum class SceneLayer { kPolygon, kVisibility, kBadRegions, kGrid, kWitnesses, kGuards };
std::string to_string(SceneLayer layer);

struct SceneRender {
  PolygonModel polygon;
  std::vector<SceneLayer> layers;  // drawn in this order after the outline
  std::vector<Point> guards;
  std::vector<VisibilityPolygon> visibility;
  std::vector<BadRegion> bad_regions;
  std::vector<Point> grid_sample;
  std::vector<Point> witnesses;
  int width_px = 600;
  int precision = 6;
  /// Optional overrides keyed "polygon", "guard", "visibility", "window",
  /// "bad", "grid", "witness"; values are inline style strings.
  std::vector<std::pair<std::string, std::string>> style;
};

/// Standalone SVG 1.1. Byte-stable for a given scene.
std::string render_svg(const SceneRender& scene);
/// Throws IoError.
void write_svg(const SceneRender& scene, const std::string& path);

/// Writes text to a file, throwing IoError on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gg
