#include "wamfek/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wamfek/error.hpp"

namespace wamfek {

using nlohmann::json;

namespace {

Point2 parse_point(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("expected a point [x, y], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point2> parse_points(const json& j, const char* field) {
  if (!j.is_array()) throw ConfigError(std::string("'") + field + "' must be an array of [x, y] pairs");
  std::vector<Point2> pts;
  for (const auto& p : j) pts.push_back(parse_point(p));
  return pts;
}

std::vector<double> parse_coeffs(const json& doc, const char* field) {
  if (!doc.contains(field)) throw ConfigError(std::string("trapezoid needs '") + field + "'");
  const json& j = doc.at(field);
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw ConfigError(std::string("'") + field + "' must be a coefficient list");
  std::vector<double> c;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(std::string("'") + field + "' must contain numbers only");
    c.push_back(v.get<double>());
  }
  return c;
}

double number(const json& doc, const char* field, double fallback) {
  if (!doc.contains(field)) return fallback;
  if (!doc.at(field).is_number()) throw ConfigError(std::string("'") + field + "' must be a number");
  return doc.at(field).get<double>();
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<BuiltinDomain>& builtin_domains() {
  static const std::vector<BuiltinDomain> domains = [] {
    std::vector<BuiltinDomain> d;
    d.push_back({"disk", "disk", Domain::unit_disk(), false});
    d.push_back({"simplex", "simplex", Domain::triangle({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}), false});
    d.push_back({"linear-trapezoid", "linear trap", Domain::trapezoid(-1.0, 1.0, {-1.0, 0.0}, {0.5, 0.5}), false});
    d.push_back({"cubic-trapezoid", "cubic trap",
                 Domain::trapezoid(-1.0, 1.0, {-1.0, 0.0, 0.0, 0.0}, {0.5, 0.0, 0.5, -0.5}), false});
    d.push_back({"convex-polygon", "conv polyg",
                 Domain::polygon({{0.1, 0.0}, {0.7, 0.2}, {1.0, 0.5}, {0.75, 0.85}, {0.5, 1.0}, {0.0, 0.25}}),
                 true});
    d.push_back({"nonconvex-polygon", "nonconv polyg",
                 Domain::polygon({{0.1, 0.1}, {0.9, 0.2}, {0.8, 0.9}, {0.5, 0.6}, {0.2, 0.9}}), true});
    d.push_back({"square", "square", Domain::square({-1.0, 1.0, -1.0, 1.0}), false});
    return d;
  }();
  return domains;
}

const BuiltinDomain* find_builtin(std::string_view name) {
  for (const auto& d : builtin_domains())
    if (d.name == name) return &d;
  return nullptr;
}

Domain parse_domain(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string()) {
    throw ConfigError("domain JSON must be an object with a string field 'kind'");
  }
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "disk") return Domain::unit_disk();
  if (kind == "triangle") {
    if (!doc.contains("vertices")) throw ConfigError("triangle needs 'vertices'");
    const auto v = parse_points(doc.at("vertices"), "vertices");
    if (v.size() != 3) throw ConfigError("triangle needs exactly 3 vertices");
    return Domain::triangle(v[0], v[1], v[2]);
  }
  if (kind == "trapezoid") {
    if (!doc.contains("a") || !doc.contains("b")) throw ConfigError("trapezoid needs 'a' and 'b'");
    return Domain::trapezoid(number(doc, "a", 0.0), number(doc, "b", 1.0), parse_coeffs(doc, "g1"),
                             parse_coeffs(doc, "g2"));
  }
  if (kind == "polygon") {
    if (!doc.contains("vertices")) throw ConfigError("polygon needs 'vertices'");
    return Domain::polygon(parse_points(doc.at("vertices"), "vertices"));
  }
  if (kind == "square") {
    return Domain::square({number(doc, "x_lo", -1.0), number(doc, "x_hi", 1.0), number(doc, "y_lo", -1.0),
                           number(doc, "y_hi", 1.0)});
  }
  throw ConfigError("unknown domain kind '" + kind + "'");
}

json domain_to_json(const Domain& dom) {
  struct Visitor {
    json operator()(const UnitDisk&) const { return {{"kind", "disk"}}; }
    json operator()(const Triangle& t) const {
      return {{"kind", "triangle"}, {"vertices", {point_json(t.u), point_json(t.v), point_json(t.w)}}};
    }
    json operator()(const PolyTrapezoid& t) const {
      return {{"kind", "trapezoid"}, {"a", t.a}, {"b", t.b}, {"g1", t.g1}, {"g2", t.g2}};
    }
    json operator()(const Polygon& p) const {
      json v = json::array();
      for (const auto& q : p.vertices) v.push_back(point_json(q));
      return {{"kind", "polygon"}, {"vertices", v}};
    }
    json operator()(const Square& s) const {
      return {{"kind", "square"}, {"x_lo", s.rect.x_lo}, {"x_hi", s.rect.x_hi}, {"y_lo", s.rect.y_lo},
              {"y_hi", s.rect.y_hi}};
    }
  };
  return std::visit(Visitor{}, dom.kind());
}

BuiltinDomain resolve_domain(std::string_view text) {
  if (const auto* builtin = find_builtin(text)) return *builtin;
  std::string body;
  std::string name;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    body = std::string(text);
    name = "custom";
  } else {
    std::ifstream in{std::filesystem::path(std::string(text))};
    if (!in) {
      throw ConfigError("unknown domain '" + std::string(text) +
                        "': not a builtin name, inline JSON object, or readable file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
    name = std::filesystem::path(std::string(text)).stem().string();
  }
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("cannot parse domain JSON: ") + e.what());
  }
  Domain dom = parse_domain(doc);
  const bool unit_square = doc.value("unit_square_functions", false);
  return {name, name, std::move(dom), unit_square};
}

void write_points_csv(std::ostream& os, std::span<const Point2> points) {
  os << "x,y\n";
  for (const auto& p : points) os << fmt17(p.x) << ',' << fmt17(p.y) << '\n';
}

std::vector<Point2> read_points_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,y", 0) != 0) throw ConfigError("points CSV must start with 'x,y'");
  std::vector<Point2> pts;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("malformed CSV line: " + line);
    try {
      pts.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    } catch (const std::exception&) {
      throw ConfigError("malformed CSV line: " + line);
    }
  }
  return pts;
}

json mesh_sidecar(const Mesh& mesh) {
  json j = {{"degree", mesh.degree},
            {"provenance", to_string(mesh.provenance)},
            {"cardinality", mesh.size()},
            {"constant_class", to_string(mesh.constant_class)},
            {"duplicates_removed", mesh.duplicates_removed}};
  if (mesh.provenance == Provenance::PaduaMapWAM || mesh.provenance == Provenance::UnionWAM) {
    j["map_degree"] = mesh.map_degree;
  }
  if (mesh.provenance == Provenance::UniformAM) j["stepsize"] = mesh.stepsize;
  return j;
}

json afp_report(const FeketeResult& result, std::optional<double> lebesgue) {
  json j = {{"n", result.basis.degree},
            {"basis", to_string(result.basis.family)},
            {"s", result.refinements},
            {"card_mesh", result.mesh_size},
            {"N", result.size()},
            {"vdm_abs", result.vdm_abs},
            {"log_vdm_abs", result.log_vdm_abs},
            {"condition_history", result.rank_report.condition_history},
            {"pivot_ratio", result.rank_report.pivot_ratio},
            {"indices", result.indices}};
  if (lebesgue) j["lebesgue"] = *lebesgue;
  if (result.weights) {
    j["weights"] = std::vector<double>(result.weights->data(), result.weights->data() + result.weights->size());
  }
  return j;
}

std::string svg_scatter(const Domain& dom, std::span<const SvgLayer> layers) {
  constexpr double kSize = 600.0;
  constexpr double kMargin = 30.0;
  Rect box = dom.bounding_box();
  const double span = std::max(box.width(), box.height());
  const double cx = 0.5 * (box.x_lo + box.x_hi);
  const double cy = 0.5 * (box.y_lo + box.y_hi);
  const double scale = (kSize - 2.0 * kMargin) / span;
  auto sx = [&](double x) { return kSize / 2.0 + (x - cx) * scale; };
  auto sy = [&](double y) { return kSize / 2.0 - (y - cy) * scale; };

  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  os << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";

  std::vector<Point2> outline;
  if (std::holds_alternative<UnitDisk>(dom.kind())) {
    os << "<circle cx=\"" << sx(0) << "\" cy=\"" << sy(0) << "\" r=\"" << scale
       << "\" fill=\"none\" stroke=\"black\"/>\n";
  } else if (const auto* t = std::get_if<Triangle>(&dom.kind())) {
    outline = {t->u, t->v, t->w};
  } else if (const auto* p = std::get_if<Polygon>(&dom.kind())) {
    outline = p->vertices;
  } else if (const auto* tr = std::get_if<PolyTrapezoid>(&dom.kind())) {
    constexpr int kSamples = 64;
    for (int i = 0; i <= kSamples; ++i) {
      const double x = tr->a + (tr->b - tr->a) * i / kSamples;
      outline.push_back({x, eval_poly(tr->g1, x)});
    }
    for (int i = kSamples; i >= 0; --i) {
      const double x = tr->a + (tr->b - tr->a) * i / kSamples;
      outline.push_back({x, eval_poly(tr->g2, x)});
    }
  } else if (const auto* s = std::get_if<Square>(&dom.kind())) {
    outline = {{s->rect.x_lo, s->rect.y_lo}, {s->rect.x_hi, s->rect.y_lo}, {s->rect.x_hi, s->rect.y_hi},
               {s->rect.x_lo, s->rect.y_hi}};
  }
  if (!outline.empty()) {
    os << "<polygon points=\"";
    for (const auto& q : outline) os << sx(q.x) << ',' << sy(q.y) << ' ';
    os << "\" fill=\"none\" stroke=\"black\"/>\n";
  }
  for (const auto& layer : layers) {
    os << "<g fill=\"" << layer.color << "\">\n";
    for (const auto& q : layer.points) {
      os << "<circle cx=\"" << sx(q.x) << "\" cy=\"" << sy(q.y) << "\" r=\"" << layer.radius << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace wamfek
