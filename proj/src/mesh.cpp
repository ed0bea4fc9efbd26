#include "wamfek/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "wamfek/error.hpp"

namespace wamfek {

namespace {

void require_degree(int n, const char* who) {
  if (n < 1) throw ConfigError(std::string(who) + ": degree must be >= 1");
}

Mesh finish(std::vector<Point2> points, int n, Provenance prov, ConstantClass cls, double diameter) {
  Mesh mesh;
  mesh.degree = n;
  mesh.provenance = prov;
  mesh.constant_class = cls;
  mesh.duplicates_removed = dedup_in_place(points, dedup_tolerance(diameter));
  mesh.points = std::move(points);
  return mesh;
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::PolarWAM: return "PolarWAM";
    case Provenance::PaduaMapWAM: return "PaduaMapWAM";
    case Provenance::UnionWAM: return "UnionWAM";
    case Provenance::TensorWAM: return "TensorWAM";
    case Provenance::UniformAM: return "UniformAM";
  }
  return "?";
}

std::string_view to_string(ConstantClass c) {
  switch (c) {
    case ConstantClass::LogSquaredN: return "log^2(n)";
    case ConstantClass::LogSquaredKN: return "log^2(kn)";
    case ConstantClass::MaxOfUnion: return "max-of-union";
    case ConstantClass::GridBounded: return "O(1)-grid";
  }
  return "?";
}

double dedup_tolerance(double diameter) { return 1e-12 * (1.0 + diameter); }

std::size_t dedup_in_place(std::vector<Point2>& points, double tol) {
  const std::size_t m = points.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].x < points[b].x || (points[a].x == points[b].x && a < b);
  });
  std::vector<char> dropped(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t a = order[i];
    if (dropped[a]) continue;
    for (std::size_t j = i + 1; j < m && points[order[j]].x - points[a].x <= tol; ++j) {
      const std::size_t b = order[j];
      if (dropped[b] || distance(points[a], points[b]) > tol) continue;
      // Keep the earlier generator index.
      dropped[std::max(a, b)] = 1;
      if (b < a) break;
    }
  }
  std::size_t out = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!dropped[i]) points[out++] = points[i];
  }
  points.resize(out);
  return m - out;
}

std::vector<double> chebyshev_lobatto(int n) {
  if (n < 1) throw ConfigError("chebyshev_lobatto: n must be >= 1");
  std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
  // sin((n - 2j) pi / (2n)) == cos(j pi / n), but is exactly odd-symmetric.
  for (int j = 0; j <= n; ++j) {
    nodes[static_cast<std::size_t>(j)] = std::sin(std::numbers::pi * (n - 2 * j) / (2.0 * n));
  }
  return nodes;
}

std::vector<Point2> padua_points(int n) {
  require_degree(n, "padua_points");
  const auto xs = chebyshev_lobatto(n);
  const auto ys = chebyshev_lobatto(n + 1);
  std::vector<Point2> points;
  points.reserve(poly_dim(n));
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n + 1; ++k) {
      if ((j + k) % 2 == 1) points.push_back({xs[static_cast<std::size_t>(j)], ys[static_cast<std::size_t>(k)]});
    }
  }
  return points;
}

Mesh disk_wam(int n) {
  require_degree(n, "disk_wam");
  const auto cl = chebyshev_lobatto(n);
  std::vector<Point2> points;
  points.reserve(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(2 * n + 1));
  for (int j = 0; j <= n; ++j) {
    const double r = 0.5 + 0.5 * cl[static_cast<std::size_t>(j)];
    for (int k = 0; k <= 2 * n; ++k) {
      points.push_back(polar_map(r, 2.0 * std::numbers::pi * k / (2 * n + 1)));
    }
  }
  return finish(std::move(points), n, Provenance::PolarWAM, ConstantClass::LogSquaredN, 2.0);
}

Mesh mapped_wam(const Domain& dom, int n) {
  require_degree(n, "mapped_wam");
  if (!dom.has_map() || std::holds_alternative<UnitDisk>(dom.kind())) {
    throw ConfigError("mapped_wam: domain '" + std::string(dom.kind_name()) + "' has no polynomial map");
  }
  const int k = dom.map_degree();
  auto reference = padua_points(k * n);
  std::vector<Point2> points;
  points.reserve(reference.size());
  for (const auto& y : reference) points.push_back(dom.map(y));
  Mesh mesh = finish(std::move(points), n, Provenance::PaduaMapWAM, ConstantClass::LogSquaredKN, dom.diameter());
  mesh.map_degree = k;
  return mesh;
}

Mesh tensor_wam(const Rect& rect, int n) {
  require_degree(n, "tensor_wam");
  const auto cl = chebyshev_lobatto(n);
  std::vector<Point2> points;
  points.reserve(cl.size() * cl.size());
  for (double u : cl) {
    for (double v : cl) {
      points.push_back({0.5 * rect.width() * u + 0.5 * (rect.x_hi + rect.x_lo),
                        0.5 * rect.height() * v + 0.5 * (rect.y_hi + rect.y_lo)});
    }
  }
  return finish(std::move(points), n, Provenance::TensorWAM, ConstantClass::LogSquaredN,
                std::hypot(rect.width(), rect.height()));
}

Mesh union_wam(std::span<const Mesh> meshes) {
  if (meshes.empty()) throw ConfigError("union_wam: no meshes given");
  if (meshes.size() == 1) return meshes.front();
  const int n = meshes.front().degree;
  std::vector<Point2> points;
  double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
  int k = 1;
  for (const auto& m : meshes) {
    if (m.degree != n) {
      std::ostringstream os;
      os << "union_wam: mixed degrees " << n << " and " << m.degree;
      throw ConfigError(os.str());
    }
    k = std::max(k, m.map_degree);
    for (const auto& p : m.points) {
      points.push_back(p);
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
  }
  Mesh mesh = finish(std::move(points), n, Provenance::UnionWAM, ConstantClass::MaxOfUnion,
                     std::hypot(hi_x - lo_x, hi_y - lo_y));
  mesh.map_degree = k;
  return mesh;
}

Mesh polygon_wam(const Domain& poly, int n, PolygonSplit split) {
  require_degree(n, "polygon_wam");
  const auto* p = std::get_if<Polygon>(&poly.kind());
  if (p == nullptr) throw ConfigError("polygon_wam: domain is not a polygon");
  const auto pieces = split == PolygonSplit::Trapezoids ? trapezoid_panels(*p) : decompose_polygon(*p);
  std::vector<Mesh> meshes;
  meshes.reserve(pieces.size());
  for (const auto& piece : pieces) meshes.push_back(mapped_wam(piece, n));
  // A single piece still reports union provenance.
  if (meshes.size() == 1) {
    meshes.front().provenance = Provenance::UnionWAM;
    meshes.front().constant_class = ConstantClass::MaxOfUnion;
    return meshes.front();
  }
  return union_wam(meshes);
}

Mesh wam(const Domain& dom, int n) {
  struct Visitor {
    const Domain& dom;
    int n;
    Mesh operator()(const UnitDisk&) const { return disk_wam(n); }
    Mesh operator()(const Triangle&) const { return mapped_wam(dom, n); }
    Mesh operator()(const PolyTrapezoid&) const { return mapped_wam(dom, n); }
    Mesh operator()(const Polygon&) const { return polygon_wam(dom, n); }
    Mesh operator()(const Square& s) const { return tensor_wam(s.rect, n); }
  };
  return std::visit(Visitor{dom, n}, dom.kind());
}

Mesh control_mesh(const Domain& dom, int n, int factor) {
  if (factor < 1) throw ConfigError("control_mesh: factor must be >= 1");
  Mesh mesh = wam(dom, factor * n);
  mesh.degree = n;
  return mesh;
}

double projected_am_cardinality(const Domain& dom, int n) {
  require_degree(n, "uniform_am");
  const double h = 1.0 / (static_cast<double>(n) * n + 1.0);
  const Rect box = dom.bounding_box();
  const double nx = std::floor(box.width() / h) + 1.0;
  const double ny = std::floor(box.height() / h) + 1.0;
  return nx * ny * (dom.area() / (box.width() * box.height()));
}

namespace {

// Visits the grid points (x_lo + i h, y_lo + j h) that lie in the domain.
template <class Fn>
void for_each_grid_point(const Domain& dom, double h, Fn&& fn) {
  const Rect box = dom.bounding_box();
  const auto nx = static_cast<long long>(std::floor(box.width() / h));
  const auto ny = static_cast<long long>(std::floor(box.height() / h));
  for (long long i = 0; i <= nx; ++i) {
    const double x = box.x_lo + static_cast<double>(i) * h;
    for (long long j = 0; j <= ny; ++j) {
      const Point2 p{x, box.y_lo + static_cast<double>(j) * h};
      if (dom.contains(p)) fn(p);
    }
  }
}

}  // namespace

std::size_t am_cardinality(const Domain& dom, int n) {
  require_degree(n, "am_cardinality");
  std::size_t count = 0;
  for_each_grid_point(dom, 1.0 / (static_cast<double>(n) * n + 1.0), [&](Point2) { ++count; });
  return count;
}

Mesh uniform_am(const Domain& dom, int n, double cap) {
  const double projected = projected_am_cardinality(dom, n);
  const double footprint = projected * static_cast<double>(poly_dim(n));
  if (footprint > cap) {
    std::ostringstream os;
    os << "AM too large: degree " << n << " needs about " << static_cast<long long>(projected)
       << " points, a " << poly_dim(n) << " x " << static_cast<long long>(projected)
       << " Vandermonde exceeds the cap of " << cap << " entries";
    throw MeshTooLargeError(os.str(), footprint);
  }
  const double h = 1.0 / (static_cast<double>(n) * n + 1.0);
  std::vector<Point2> points;
  points.reserve(static_cast<std::size_t>(projected * 1.05) + 16);
  for_each_grid_point(dom, h, [&](Point2 p) { points.push_back(p); });
  Mesh mesh;
  mesh.degree = n;
  mesh.points = std::move(points);
  mesh.provenance = Provenance::UniformAM;
  mesh.constant_class = ConstantClass::GridBounded;
  mesh.stepsize = h;
  return mesh;
}

}  // namespace wamfek
