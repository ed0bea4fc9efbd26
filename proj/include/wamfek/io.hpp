#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wamfek/fekete.hpp"
#include "wamfek/geometry.hpp"
#include "wamfek/mesh.hpp"

namespace wamfek {

/// A named domain used by the table reproductions and the CLI.
struct BuiltinDomain {
  std::string name;   // CLI name, e.g. "cubic-trapezoid"
  std::string label;  // table label, e.g. "cubic trap"
  Domain domain;
  /// Test functions are evaluated as f(2x-1, 2y-1) on this domain.
  bool unit_square_functions = false;
};

/// disk, simplex, linear-trapezoid, cubic-trapezoid, convex-polygon,
/// nonconvex-polygon (table order), then square.
const std::vector<BuiltinDomain>& builtin_domains();
const BuiltinDomain* find_builtin(std::string_view name);

/// Parses {"kind": "disk"|"triangle"|"trapezoid"|"polygon"|"square", ...}.
Domain parse_domain(const nlohmann::json& doc);
nlohmann::json domain_to_json(const Domain& dom);

/// Resolves a builtin name, an inline JSON object or a path to a JSON file.
BuiltinDomain resolve_domain(std::string_view text);

/// CSV with header "x,y", one point per line, 17 significant digits.
void write_points_csv(std::ostream& os, std::span<const Point2> points);
std::vector<Point2> read_points_csv(std::istream& is);

/// {degree, provenance, cardinality, constant_class, ...}
nlohmann::json mesh_sidecar(const Mesh& mesh);

/// {n, basis, s, card_mesh, N, vdm_abs, log_vdm_abs, condition_history, ...}
nlohmann::json afp_report(const FeketeResult& result, std::optional<double> lebesgue = std::nullopt);

struct SvgLayer {
  std::span<const Point2> points;
  std::string color;
  double radius = 2.0;
};

/// 600x600 scatter plot framing the domain's bounding box.
std::string svg_scatter(const Domain& dom, std::span<const SvgLayer> layers);

/// Writes `text` to `path`, throwing ConfigError when the file cannot be opened.
void write_file(const std::string& path, std::string_view text);

}  // namespace wamfek
