#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "wamfek/geometry.hpp"

namespace wamfek {

enum class Provenance { PolarWAM, PaduaMapWAM, UnionWAM, TensorWAM, UniformAM };

/// Growth class of the mesh constant C(A_n).
enum class ConstantClass { LogSquaredN, LogSquaredKN, MaxOfUnion, GridBounded };

std::string_view to_string(Provenance p);
std::string_view to_string(ConstantClass c);

/// A degree-indexed point set.  Points are distinct (see dedup_tolerance) and
/// kept in generator order.
struct Mesh {
  int degree = 0;
  std::vector<Point2> points;
  Provenance provenance = Provenance::PolarWAM;
  ConstantClass constant_class = ConstantClass::LogSquaredN;
  int map_degree = 1;             // k of a Padua-map mesh
  double stepsize = 0.0;          // h of a uniform AM
  std::size_t duplicates_removed = 0;

  std::size_t size() const { return points.size(); }
};

/// N = dim P^2_n = (n+1)(n+2)/2.
constexpr std::size_t poly_dim(int n) {
  return static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 2) / 2;
}

/// Distance below which two mesh points are the same point.
double dedup_tolerance(double diameter);

/// Removes later duplicates, keeping the first occurrence of each point.
/// Returns the number of points removed.
std::size_t dedup_in_place(std::vector<Point2>& points, double tol);

/// cos(j pi / n), j = 0..n, with exact zeros and symmetric values.
std::vector<double> chebyshev_lobatto(int n);

/// Padua points of degree n on [-1,1]^2 ((n+1)(n+2)/2 points).
std::vector<Point2> padua_points(int n);

/// Polar-grid WAM of the unit disk, 2n^2+n+1 points.
Mesh disk_wam(int n);

/// Padua points of degree k*n pushed through the domain's polynomial map.
Mesh mapped_wam(const Domain& dom, int n);

/// (n+1)^2 Chebyshev-Lobatto tensor grid mapped affinely onto a rectangle.
Mesh tensor_wam(const Rect& rect, int n);

/// Concatenation with cross-piece deduplication; all meshes share a degree.
Mesh union_wam(std::span<const Mesh> meshes);

enum class PolygonSplit { Trapezoids, Triangles };

/// Union of mapped WAMs over the pieces of a polygon.
Mesh polygon_wam(const Domain& poly, int n, PolygonSplit split = PolygonSplit::Trapezoids);

/// Default geometric WAM of any domain: polar for the disk, mapped Padua for
/// triangles and trapezoids, union over panels for polygons, tensor grid for squares.
Mesh wam(const Domain& dom, int n);

/// Same construction at degree factor*n; used to estimate sup norms.
Mesh control_mesh(const Domain& dom, int n, int factor = 4);

/// Default cap on the projected footprint card(AM) * N of a uniform AM.
inline constexpr double kDefaultAmCap = 1e7;

/// Projected cardinality of uniform_am(dom, n) before it is built.
double projected_am_cardinality(const Domain& dom, int n);

/// Exact card(uniform_am(dom, n)) counted without storing the points; no cap.
std::size_t am_cardinality(const Domain& dom, int n);

/// Uniform grid of stepsize h = 1/(n^2+1), anchored at the lower-left corner
/// of the bounding box, intersected with the domain.  Throws
/// MeshTooLargeError when projected cardinality times N exceeds `cap`.
Mesh uniform_am(const Domain& dom, int n, double cap = kDefaultAmCap);

}  // namespace wamfek
