#include "guardgrid/io.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "guardgrid/errors.hpp"
#include "json.hpp"

namespace gg {

namespace {

using ojson = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Integer parse_integer_meta(const std::string& text, int line, int col) {
  Scalar v;
  try {
    v = parse_scalar(text);
  } catch (const std::invalid_argument&) {
    throw ParseError(line, col, "expected an integer, got '" + text + "'");
  }
  if (v.get_den() != 1) throw ParseError(line, col, "expected an integer, got '" + text + "'");
  return v.get_num();
}

// Metadata comment "# key: value".
void read_meta(PolygonFile& f, std::string_view comment, int line, int col) {
  std::string body = trim(comment);
  auto colon = body.find(':');
  if (colon == std::string::npos) return;
  std::string key = trim(std::string_view(body).substr(0, colon));
  std::string value = trim(std::string_view(body).substr(colon + 1));
  if (key == "name")
    f.name = value;
  else if (key == "M")
    f.expected_m = parse_integer_meta(value, line, col);
  else if (key == "L")
    f.expected_l = parse_integer_meta(value, line, col);
}

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Scalar json_scalar(const ojson& v, const std::string& where) {
  if (v.is_number_integer()) return Scalar(Integer(v.dump()));
  if (v.is_string()) {
    try {
      return parse_scalar(v.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError(1, 1, where + ": malformed number '" + v.get<std::string>() + "'");
    }
  }
  throw ParseError(1, 1, where + ": coordinates must be integers or \"p/q\" strings");
}

std::vector<Point> json_points(const ojson& arr, const std::string& key) {
  if (!arr.is_array()) throw ParseError(1, 1, "'" + key + "' must be an array");
  std::vector<Point> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string where = key + "[" + std::to_string(i) + "]";
    const ojson& p = arr[i];
    if (!p.is_array() || p.size() != 2) throw ParseError(1, 1, where + ": expected [x, y]");
    out.emplace_back(json_scalar(p[0], where), json_scalar(p[1], where));
  }
  return out;
}

ojson json_coord(const Scalar& v) {
  if (v.get_den() == 1 && v.get_num().fits_slong_p()) return v.get_num().get_si();
  return to_string(v);
}

ojson json_parse(std::string_view text) {
  try {
    return ojson::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(line, col, "malformed JSON");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "cannot read '" + path + "'");
  return ss.str();
}

PolygonModel load_checked(const PolygonFile& f) {
  PolygonModel m = load_polygon(f.vertices);
  if (f.expected_m && *f.expected_m != m.M())
    throw Error(ErrorCode::kInvalidArgument, "metadata M = " + f.expected_m->get_str() + " but the polygon has M = " +
                                                 m.M().get_str());
  if (f.expected_l && *f.expected_l != m.L())
    throw Error(ErrorCode::kInvalidArgument, "metadata L = " + f.expected_l->get_str() + " but the polygon has L = " +
                                                 m.L().get_str());
  return m;
}

}  // namespace

PolygonFile parse_polygon_text(std::string_view text) {
  PolygonFile f;
  f.format = PolygonFormat::kPlainText;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) {
      read_meta(f, line.substr(hash + 1), line_no, static_cast<int>(hash) + 1);
      line = line.substr(0, hash);
    }
    std::vector<std::pair<std::string, int>> tokens;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      tokens.emplace_back(std::string(line.substr(i, j - i)), static_cast<int>(i) + 1);
      i = j;
    }
    if (!tokens.empty()) {
      Scalar xy[2];
      for (std::size_t k = 0; k < tokens.size() && k < 2; ++k) {
        try {
          xy[k] = parse_scalar(tokens[k].first);
        } catch (const std::invalid_argument&) {
          throw ParseError(line_no, tokens[k].second, "malformed number '" + tokens[k].first + "'");
        }
      }
      if (tokens.size() != 2)
        throw ParseError(line_no, tokens.size() > 2 ? tokens[2].second : static_cast<int>(line.size()) + 1,
                         "expected two coordinates per line");
      f.vertices.emplace_back(xy[0], xy[1]);
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return f;
}

PolygonFile parse_polygon_json(std::string_view text) {
  ojson j = json_parse(text);
  if (!j.is_object()) throw ParseError(1, 1, "expected a JSON object");
  if (!j.contains("vertices")) throw ParseError(1, 1, "missing 'vertices'");
  PolygonFile f;
  f.format = PolygonFormat::kJson;
  f.vertices = json_points(j["vertices"], "vertices");
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError(1, 1, "'name' must be a string");
    f.name = j["name"].get<std::string>();
  }
  for (const char* key : {"M", "L"}) {
    if (!j.contains(key)) continue;
    Scalar v = json_scalar(j[key], key);
    if (v.get_den() != 1) throw ParseError(1, 1, std::string(key) + " must be an integer");
    (key[0] == 'M' ? f.expected_m : f.expected_l) = v.get_num();
  }
  return f;
}

PolygonFile parse_polygon(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_polygon_json(text) : parse_polygon_text(text);
  }
  return parse_polygon_text(text);
}

std::string format_polygon_text(const PolygonFile& f) {
  std::ostringstream out;
  if (f.name) out << "# name: " << *f.name << "\n";
  if (f.expected_m) out << "# M: " << f.expected_m->get_str() << "\n";
  if (f.expected_l) out << "# L: " << f.expected_l->get_str() << "\n";
  for (const Point& p : f.vertices) out << to_string(p.x()) << " " << to_string(p.y()) << "\n";
  return out.str();
}

std::string format_polygon_json(const PolygonFile& f) {
  ojson j;
  if (f.name) j["name"] = *f.name;
  if (f.expected_m) j["M"] = json_coord(Scalar(*f.expected_m));
  if (f.expected_l) j["L"] = json_coord(Scalar(*f.expected_l));
  ojson vs = ojson::array();
  for (const Point& p : f.vertices) vs.push_back({json_coord(p.x()), json_coord(p.y())});
  j["vertices"] = vs;
  return j.dump(2) + "\n";
}

std::string format_polygon(const PolygonFile& f) {
  return f.format == PolygonFormat::kJson ? format_polygon_json(f) : format_polygon_text(f);
}

PolygonModel read_polygon(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_checked(parse_polygon(ss.str()));
}

PolygonModel read_polygon(const std::string& path) { return load_checked(read_polygon_file(path)); }

PolygonFile read_polygon_file(const std::string& path) { return parse_polygon(read_file(path)); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
}

void write_polygon_file(const PolygonFile& file, const std::string& path) {
  write_text_file(path, format_polygon(file));
}

std::string format_guard_set(const GuardSet& g) {
  ojson j;
  ojson pts = ojson::array(), tags = ojson::array();
  for (std::size_t i = 0; i < g.guards.size(); ++i) {
    pts.push_back({json_coord(g.guards[i].x()), json_coord(g.guards[i].y())});
    tags.push_back(to_string(g.tags[i]));
  }
  j["guards"] = pts;
  j["tags"] = tags;
  return j.dump(2) + "\n";
}

GuardSet parse_guard_set(std::string_view text) {
  std::string t = trim(text);
  if (t.empty() || t[0] != '{') return make_guard_set(parse_polygon_text(text).vertices);
  ojson j = json_parse(text);
  if (!j.is_object() || !j.contains("guards")) throw ParseError(1, 1, "missing 'guards'");
  std::vector<Point> pts = json_points(j["guards"], "guards");
  GuardSet g;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    GuardTag tag = GuardTag::kOriginal;
    if (j.contains("tags") && j["tags"].is_array() && i < j["tags"].size()) {
      std::string name = j["tags"][i].is_string() ? j["tags"][i].get<std::string>() : "";
      bool known = false;
      for (GuardTag cand : {GuardTag::kOriginal, GuardTag::kAlphaGrid, GuardTag::kStarVertex,
                            GuardTag::kBadRegionVertex, GuardTag::kSolverGreedy})
        if (to_string(cand) == name) tag = cand, known = true;
      if (!known) throw ParseError(1, 1, "tags[" + std::to_string(i) + "]: unknown tag '" + name + "'");
    }
    g.add(pts[i], tag);
  }
  return g;
}

std::string fixed_decimal(const Scalar& v, int digits) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Scalar a = abs(v) * Scalar(scale) + Scalar(1, 2);
  Integer n = floor(a);
  std::string body = n.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return (v < 0 && n != 0 ? "-" : "") + body;
}

std::string to_string(SceneLayer layer) {
  switch (layer) {
    case SceneLayer::kPolygon:
      return "polygon";
    case SceneLayer::kVisibility:
      return "visibility";
    case SceneLayer::kBadRegions:
      return "bad-regions";
    case SceneLayer::kGrid:
      return "grid";
    case SceneLayer::kWitnesses:
      return "witnesses";
    case SceneLayer::kGuards:
      return "guards";
  }
  return "polygon";
}

namespace {

class SvgWriter {
 public:
  explicit SvgWriter(const SceneRender& s) : scene_(s) {
    const auto& vs = s.polygon.vertices();
    min_x_ = max_x_ = vs.front().x();
    min_y_ = max_y_ = vs.front().y();
    for (const Point& p : vs) {
      min_x_ = std::min(min_x_, p.x());
      max_x_ = std::max(max_x_, p.x());
      min_y_ = std::min(min_y_, p.y());
      max_y_ = std::max(max_y_, p.y());
    }
    Scalar extent = std::max(Scalar(max_x_ - min_x_), Scalar(max_y_ - min_y_));
    pad_ = extent / 20;
    scale_ = Scalar(s.width_px) / (extent + 2 * pad_);
  }

  std::string x(const Scalar& v) const { return fixed_decimal(Scalar((v - min_x_ + pad_) * scale_), scene_.precision); }
  std::string y(const Scalar& v) const { return fixed_decimal(Scalar((max_y_ - v + pad_) * scale_), scene_.precision); }
  std::string width() const { return fixed_decimal(Scalar((max_x_ - min_x_ + 2 * pad_) * scale_), scene_.precision); }
  std::string height() const { return fixed_decimal(Scalar((max_y_ - min_y_ + 2 * pad_) * scale_), scene_.precision); }

  std::string path(const std::vector<Point>& ring) const {
    std::string d;
    for (std::size_t i = 0; i < ring.size(); ++i)
      d += (i == 0 ? "M" : " L") + x(ring[i].x()) + " " + y(ring[i].y());
    return d + " Z";
  }

  std::string style(const std::string& key, const std::string& fallback) const {
    for (const auto& [k, v] : scene_.style)
      if (k == key) return v;
    return fallback;
  }

 private:
  const SceneRender& scene_;
  Scalar min_x_, max_x_, min_y_, max_y_, pad_, scale_;
};

std::string exact_list(const std::vector<Point>& pts) {
  std::string out;
  for (const Point& p : pts) out += " " + to_string(p.x()) + "," + to_string(p.y());
  return out;
}

}  // namespace

std::string render_svg(const SceneRender& s) {
  if (s.polygon.n() < 3) throw Error(ErrorCode::kInvalidArgument, "scene has no polygon");
  SvgWriter w(s);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w.width() << "\" height=\""
      << w.height() << "\" viewBox=\"0 0 " << w.width() << " " << w.height() << "\">\n";
  out << "<!-- exact polygon:" << exact_list(s.polygon.vertices()) << " -->\n";
  if (!s.guards.empty()) out << "<!-- exact guards:" << exact_list(s.guards) << " -->\n";
  out << "<g id=\"polygon\">\n<path d=\"" << w.path(s.polygon.vertices()) << "\" style=\""
      << w.style("polygon", "fill:#f4f1e8;stroke:#222222;stroke-width:1.5") << "\"/>\n</g>\n";

  for (SceneLayer layer : s.layers) {
    switch (layer) {
      case SceneLayer::kPolygon:
        break;
      case SceneLayer::kVisibility:
        out << "<g id=\"visibility\">\n";
        for (const auto& v : s.visibility) {
          if (v.boundary.size() < 3) continue;
          out << "<path d=\"" << w.path(v.boundary) << "\" style=\""
              << w.style("visibility", "fill:#4a90d9;fill-opacity:0.25;stroke:none") << "\"/>\n";
          for (int e : v.window_edges) {
            const Point& a = v.boundary[static_cast<std::size_t>(e)];
            const Point& b = v.boundary[(static_cast<std::size_t>(e) + 1) % v.boundary.size()];
            out << "<line x1=\"" << w.x(a.x()) << "\" y1=\"" << w.y(a.y()) << "\" x2=\"" << w.x(b.x()) << "\" y2=\""
                << w.y(b.y()) << "\" style=\""
                << w.style("window", "stroke:#1f5fa8;stroke-width:1;stroke-dasharray:4,3") << "\"/>\n";
          }
        }
        out << "</g>\n";
        break;
      case SceneLayer::kBadRegions:
        out << "<g id=\"bad-regions\">\n";
        for (const auto& r : s.bad_regions)
          for (const auto& wedge : r.wedges) {
            if (wedge.polygon.size() < 3) continue;
            out << "<path class=\"wedge\" d=\"" << w.path(wedge.polygon) << "\" style=\""
                << w.style("bad", "fill:#d0021b;fill-opacity:0.35;stroke:#d0021b;stroke-width:0.5") << "\"/>\n";
          }
        out << "</g>\n";
        break;
      case SceneLayer::kGrid:
        out << "<g id=\"grid\">\n";
        for (const Point& p : s.grid_sample)
          out << "<rect x=\"" << w.x(p.x()) << "\" y=\"" << w.y(p.y()) << "\" width=\"2\" height=\"2\" style=\""
              << w.style("grid", "fill:#7f7f7f") << "\"/>\n";
        out << "</g>\n";
        break;
      case SceneLayer::kWitnesses:
        out << "<g id=\"witnesses\">\n";
        for (const Point& p : s.witnesses)
          out << "<rect x=\"" << w.x(p.x()) << "\" y=\"" << w.y(p.y()) << "\" width=\"3\" height=\"3\" style=\""
              << w.style("witness", "fill:#f5a623") << "\"/>\n";
        out << "</g>\n";
        break;
      case SceneLayer::kGuards:
        out << "<g id=\"guards\">\n";
        for (const Point& p : s.guards)
          out << "<circle cx=\"" << w.x(p.x()) << "\" cy=\"" << w.y(p.y()) << "\" r=\"4\" style=\""
              << w.style("guard", "fill:#2e7d32;stroke:#ffffff;stroke-width:1") << "\"/>\n";
        out << "</g>\n";
        break;
    }
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const SceneRender& scene, const std::string& path) { write_text_file(path, render_svg(scene)); }

}  // namespace gg
