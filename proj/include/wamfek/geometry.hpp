#pragma once

#include <cmath>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace wamfek {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Axis-aligned rectangle [x_lo, x_hi] x [y_lo, y_hi].
struct Rect {
  double x_lo = -1.0;
  double x_hi = 1.0;
  double y_lo = -1.0;
  double y_hi = 1.0;

  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
  bool contains(Point2 p, double tol) const {
    return p.x >= x_lo - tol && p.x <= x_hi + tol && p.y >= y_lo - tol && p.y <= y_hi + tol;
  }
};

/// Absolute tolerance of point-in-domain tests.
inline constexpr double kInsideTol = 1e-10;

struct UnitDisk {};

struct Triangle {
  Point2 u, v, w;
};

/// a <= x <= b, g1(x) <= y <= g2(x).  Coefficients are in ascending powers of x.
struct PolyTrapezoid {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> g1;
  std::vector<double> g2;
};

/// Simple, simply connected polygon; vertices stored counterclockwise.
struct Polygon {
  std::vector<Point2> vertices;
};

struct Square {
  Rect rect;
};

using DomainKind = std::variant<UnitDisk, Triangle, PolyTrapezoid, Polygon, Square>;

/// A compact planar set together with the surjective map t : Q -> K from its
/// reference rectangle Q.  Instances are validated on construction and
/// immutable afterwards.
class Domain {
 public:
  static Domain unit_disk();
  static Domain triangle(Point2 u, Point2 v, Point2 w);
  static Domain trapezoid(double a, double b, std::vector<double> g1, std::vector<double> g2);
  static Domain polygon(std::vector<Point2> vertices);
  static Domain square(Rect rect);

  const DomainKind& kind() const { return kind_; }
  std::string_view kind_name() const;

  /// Q: [0,1]x[0,2pi] for the disk, [-1,1]^2 for the mapped domains, the
  /// rectangle itself for a square, the bounding box for a polygon.
  Rect reference() const;

  /// Polynomial degree k of t (1 affine, 2 Duffy, nu+1 for trapezoids).  The
  /// disk map is trigonometric and reports 1; polygons report the degree of
  /// their pieces (2).
  int map_degree() const { return map_degree_; }

  /// True when a single map t covers the domain (everything but polygons).
  bool has_map() const { return !std::holds_alternative<Polygon>(kind_); }

  /// Evaluates t at a point of reference(); throws ConfigError for polygons.
  Point2 map(Point2 y) const;

  bool contains(Point2 p, double tol = kInsideTol) const;
  Rect bounding_box() const;
  double area() const;
  double diameter() const;

 private:
  explicit Domain(DomainKind kind, int map_degree) : kind_(std::move(kind)), map_degree_(map_degree) {}

  DomainKind kind_;
  int map_degree_ = 1;
};

/// Horner evaluation, ascending coefficients.
double eval_poly(std::span<const double> coeffs, double x);

/// t(r, phi) = (r cos phi, r sin phi); 0 <= r <= 1.
Point2 polar_map(double r, double phi);

/// Duffy transformation of [-1,1]^2 onto the triangle (u, v, w); the side
/// y2 = 1 collapses onto w.
Point2 duffy_map(Point2 u, Point2 v, Point2 w, Point2 y);

/// Degree nu+1 map of [-1,1]^2 onto a polynomial trapezoid.
Point2 trapezoid_map(const PolyTrapezoid& trap, Point2 y);

double signed_area(std::span<const Point2> ring);

/// Ear-clipping triangulation into m-2 triangles (lowest-index ear first).
std::vector<Domain> decompose_polygon(const Polygon& poly);

/// Linear trapezoid panels obtained by projecting the vertices on the x-axis.
/// Falls back to decompose_polygon() when some vertical line meets the
/// boundary in more than two points.  Panels that degenerate to a triangle
/// are kept as trapezoids with g1(a) == g2(a) or g1(b) == g2(b).
std::vector<Domain> trapezoid_panels(const Polygon& poly);

/// True when the polygon boundary splits into an x-monotone lower and upper chain.
bool is_x_monotone(const Polygon& poly);

}  // namespace wamfek
