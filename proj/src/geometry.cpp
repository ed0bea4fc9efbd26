#include "wamfek/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wamfek/error.hpp"

namespace wamfek {

namespace {

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

int effective_degree(std::span<const double> coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  while (deg > 0 && coeffs[static_cast<std::size_t>(deg)] == 0.0) --deg;
  return std::max(deg, 0);
}

// Closed-segment intersection, used only for simplicity checks.
bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  auto orient = [](Point2 a, Point2 b, Point2 c) {
    const double v = cross(b - a, c - a);
    const double scale = std::max({std::abs(b.x - a.x), std::abs(b.y - a.y), std::abs(c.x - a.x),
                                   std::abs(c.y - a.y), 1.0});
    if (std::abs(v) <= 1e-14 * scale * scale) return 0;
    return v > 0 ? 1 : -1;
  };
  auto on_segment = [](Point2 a, Point2 b, Point2 c) {
    return std::min(a.x, b.x) - 1e-14 <= c.x && c.x <= std::max(a.x, b.x) + 1e-14 &&
           std::min(a.y, b.y) - 1e-14 <= c.y && c.y <= std::max(a.y, b.y) + 1e-14;
  };
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 > 0.0 ? ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

bool triangle_contains(const Triangle& t, Point2 p, double tol) {
  const Point2 verts[3] = {t.u, t.v, t.w};
  const double orientation = cross(t.v - t.u, t.w - t.u) > 0 ? 1.0 : -1.0;
  for (int i = 0; i < 3; ++i) {
    const Point2 a = verts[i];
    const Point2 b = verts[(i + 1) % 3];
    const Point2 e = b - a;
    const double len = std::hypot(e.x, e.y);
    // Signed distance of p to the edge line, positive inside.
    if (orientation * cross(e, p - a) / len < -tol) return false;
  }
  return true;
}

bool polygon_contains(const Polygon& poly, Point2 p, double tol) {
  const auto& vs = poly.vertices;
  const std::size_t m = vs.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (point_segment_distance(p, vs[i], vs[(i + 1) % m]) <= tol) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const Point2 a = vs[i];
    const Point2 b = vs[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

void validate_polygon(std::vector<Point2>& vs) {
  const std::size_t m = vs.size();
  if (m < 3) throw ConfigError("polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < m; ++i) {
    if (!finite(vs[i])) throw ConfigError("polygon vertex " + std::to_string(i) + " is not finite");
  }
  double scale = 0.0;
  for (const auto& p : vs) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (distance(vs[i], vs[j]) <= 1e-14 * (1.0 + scale)) {
        std::ostringstream os;
        os << "polygon has repeated vertex: vertices " << i << " and " << j
           << " coincide (edges " << (i + m - 1) % m << " and " << i << " are degenerate)";
        throw ConfigError(os.str());
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
      if (adjacent) continue;
      if (segments_intersect(vs[i], vs[(i + 1) % m], vs[j], vs[(j + 1) % m])) {
        std::ostringstream os;
        os << "polygon is not simple: edge " << i << " (vertex " << i << "->" << (i + 1) % m
           << ") intersects edge " << j << " (vertex " << j << "->" << (j + 1) % m << ")";
        throw ConfigError(os.str());
      }
    }
  }
  const double area = signed_area(vs);
  if (std::abs(area) <= 1e-14 * (1.0 + scale * scale)) throw ConfigError("polygon has zero area");
  if (area < 0) std::reverse(vs.begin(), vs.end());
}

}  // namespace

double eval_poly(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double signed_area(std::span<const Point2> ring) {
  double twice = 0.0;
  const std::size_t m = ring.size();
  for (std::size_t i = 0; i < m; ++i) twice += cross(ring[i], ring[(i + 1) % m]);
  return 0.5 * twice;
}

Point2 polar_map(double r, double phi) {
  if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("polar_map: radius must lie in [0, 1]");
  return {r * std::cos(phi), r * std::sin(phi)};
}

Point2 duffy_map(Point2 u, Point2 v, Point2 w, Point2 y) {
  if (std::abs(cross(v - u, w - u)) == 0.0) throw ConfigError("duffy_map: degenerate triangle");
  const double a = 0.25 * (1.0 + y.x) * (1.0 - y.y);
  const double b = 0.5 * (1.0 + y.y);
  return a * (v - u) + b * (w - u) + u;
}

Point2 trapezoid_map(const PolyTrapezoid& trap, Point2 y) {
  const double x1 = 0.5 * (trap.b - trap.a) * y.x + 0.5 * (trap.b + trap.a);
  const double lo = eval_poly(trap.g1, x1);
  const double hi = eval_poly(trap.g2, x1);
  return {x1, 0.5 * (hi - lo) * y.y + 0.5 * (hi + lo)};
}

Domain Domain::unit_disk() { return Domain(UnitDisk{}, 1); }

Domain Domain::triangle(Point2 u, Point2 v, Point2 w) {
  if (!finite(u) || !finite(v) || !finite(w)) throw ConfigError("triangle vertices must be finite");
  const double scale = std::max({distance(u, v), distance(v, w), distance(w, u)});
  if (scale == 0.0 || std::abs(cross(v - u, w - u)) <= 1e-14 * scale * scale) {
    throw ConfigError("triangle vertices are collinear");
  }
  return Domain(Triangle{u, v, w}, 2);
}

Domain Domain::trapezoid(double a, double b, std::vector<double> g1, std::vector<double> g2) {
  if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b)) throw ConfigError("trapezoid requires a < b");
  if (g1.empty() || g2.empty()) throw ConfigError("trapezoid boundary polynomials must be non-empty");
  for (double c : g1) if (!std::isfinite(c)) throw ConfigError("trapezoid g1 has non-finite coefficient");
  for (double c : g2) if (!std::isfinite(c)) throw ConfigError("trapezoid g2 has non-finite coefficient");
  constexpr int kSamples = 512;
  double scale = 1.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = a + (b - a) * i / kSamples;
    scale = std::max({scale, std::abs(eval_poly(g1, x)), std::abs(eval_poly(g2, x))});
  }
  for (int i = 0; i <= kSamples; ++i) {
    const double x = a + (b - a) * i / kSamples;
    if (eval_poly(g1, x) > eval_poly(g2, x) + 1e-12 * scale) {
      std::ostringstream os;
      os << "trapezoid requires g1(x) <= g2(x); violated at x = " << x;
      throw ConfigError(os.str());
    }
  }
  const int k = std::max(effective_degree(g1), effective_degree(g2)) + 1;
  return Domain(PolyTrapezoid{a, b, std::move(g1), std::move(g2)}, k);
}

Domain Domain::polygon(std::vector<Point2> vertices) {
  validate_polygon(vertices);
  return Domain(Polygon{std::move(vertices)}, 2);
}

Domain Domain::square(Rect rect) {
  if (!(rect.x_lo < rect.x_hi) || !(rect.y_lo < rect.y_hi)) {
    throw ConfigError("square requires x_lo < x_hi and y_lo < y_hi");
  }
  return Domain(Square{rect}, 1);
}

std::string_view Domain::kind_name() const {
  struct Visitor {
    std::string_view operator()(const UnitDisk&) const { return "disk"; }
    std::string_view operator()(const Triangle&) const { return "triangle"; }
    std::string_view operator()(const PolyTrapezoid&) const { return "trapezoid"; }
    std::string_view operator()(const Polygon&) const { return "polygon"; }
    std::string_view operator()(const Square&) const { return "square"; }
  };
  return std::visit(Visitor{}, kind_);
}

Rect Domain::reference() const {
  if (std::holds_alternative<UnitDisk>(kind_)) return {0.0, 1.0, 0.0, 2.0 * std::numbers::pi};
  if (std::holds_alternative<Polygon>(kind_)) return bounding_box();
  return {-1.0, 1.0, -1.0, 1.0};
}

Point2 Domain::map(Point2 y) const {
  struct Visitor {
    Point2 y;
    Point2 operator()(const UnitDisk&) const { return polar_map(y.x, y.y); }
    Point2 operator()(const Triangle& t) const { return duffy_map(t.u, t.v, t.w, y); }
    Point2 operator()(const PolyTrapezoid& t) const { return trapezoid_map(t, y); }
    Point2 operator()(const Polygon&) const {
      throw ConfigError("a polygon has no single map; decompose it into pieces first");
    }
    Point2 operator()(const Square& s) const {
      const Rect& r = s.rect;
      return {0.5 * (r.x_hi - r.x_lo) * y.x + 0.5 * (r.x_hi + r.x_lo),
              0.5 * (r.y_hi - r.y_lo) * y.y + 0.5 * (r.y_hi + r.y_lo)};
    }
  };
  return std::visit(Visitor{y}, kind_);
}

bool Domain::contains(Point2 p, double tol) const {
  struct Visitor {
    Point2 p;
    double tol;
    bool operator()(const UnitDisk&) const { return std::hypot(p.x, p.y) <= 1.0 + tol; }
    bool operator()(const Triangle& t) const { return triangle_contains(t, p, tol); }
    bool operator()(const PolyTrapezoid& t) const {
      if (p.x < t.a - tol || p.x > t.b + tol) return false;
      const double x = std::clamp(p.x, t.a, t.b);
      return p.y >= eval_poly(t.g1, x) - tol && p.y <= eval_poly(t.g2, x) + tol;
    }
    bool operator()(const Polygon& poly) const { return polygon_contains(poly, p, tol); }
    bool operator()(const Square& s) const { return s.rect.contains(p, tol); }
  };
  return std::visit(Visitor{p, tol}, kind_);
}

Rect Domain::bounding_box() const {
  struct Visitor {
    Rect operator()(const UnitDisk&) const { return {-1.0, 1.0, -1.0, 1.0}; }
    Rect operator()(const Triangle& t) const {
      return {std::min({t.u.x, t.v.x, t.w.x}), std::max({t.u.x, t.v.x, t.w.x}),
              std::min({t.u.y, t.v.y, t.w.y}), std::max({t.u.y, t.v.y, t.w.y})};
    }
    Rect operator()(const PolyTrapezoid& t) const {
      // Sampled plus critical-point-free bound: dense sampling is adequate for
      // the low-degree boundaries used here.
      constexpr int kSamples = 2048;
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (int i = 0; i <= kSamples; ++i) {
        const double x = t.a + (t.b - t.a) * i / kSamples;
        lo = std::min(lo, eval_poly(t.g1, x));
        hi = std::max(hi, eval_poly(t.g2, x));
      }
      return {t.a, t.b, lo, hi};
    }
    Rect operator()(const Polygon& poly) const {
      Rect r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
      for (const auto& p : poly.vertices) {
        r.x_lo = std::min(r.x_lo, p.x);
        r.x_hi = std::max(r.x_hi, p.x);
        r.y_lo = std::min(r.y_lo, p.y);
        r.y_hi = std::max(r.y_hi, p.y);
      }
      return r;
    }
    Rect operator()(const Square& s) const { return s.rect; }
  };
  return std::visit(Visitor{}, kind_);
}

double Domain::area() const {
  struct Visitor {
    double operator()(const UnitDisk&) const { return std::numbers::pi; }
    double operator()(const Triangle& t) const { return 0.5 * std::abs(cross(t.v - t.u, t.w - t.u)); }
    double operator()(const PolyTrapezoid& t) const {
      // Exact integral of g2 - g1 through the antiderivative.
      const std::size_t len = std::max(t.g1.size(), t.g2.size());
      std::vector<double> anti(len + 1, 0.0);
      for (std::size_t i = 0; i < len; ++i) {
        const double c = (i < t.g2.size() ? t.g2[i] : 0.0) - (i < t.g1.size() ? t.g1[i] : 0.0);
        anti[i + 1] = c / static_cast<double>(i + 1);
      }
      return eval_poly(anti, t.b) - eval_poly(anti, t.a);
    }
    double operator()(const Polygon& poly) const { return signed_area(poly.vertices); }
    double operator()(const Square& s) const { return s.rect.width() * s.rect.height(); }
  };
  return std::visit(Visitor{}, kind_);
}

double Domain::diameter() const {
  struct Visitor {
    double operator()(const UnitDisk&) const { return 2.0; }
    double operator()(const Triangle& t) const {
      return std::max({distance(t.u, t.v), distance(t.v, t.w), distance(t.w, t.u)});
    }
    double operator()(const PolyTrapezoid& t) const {
      constexpr int kSamples = 128;
      std::vector<Point2> boundary;
      boundary.reserve(2 * (kSamples + 1));
      for (int i = 0; i <= kSamples; ++i) {
        const double x = t.a + (t.b - t.a) * i / kSamples;
        boundary.push_back({x, eval_poly(t.g1, x)});
        boundary.push_back({x, eval_poly(t.g2, x)});
      }
      double d = 0.0;
      for (std::size_t i = 0; i < boundary.size(); ++i)
        for (std::size_t j = i + 1; j < boundary.size(); ++j) d = std::max(d, distance(boundary[i], boundary[j]));
      return d;
    }
    double operator()(const Polygon& poly) const {
      double d = 0.0;
      const auto& vs = poly.vertices;
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) d = std::max(d, distance(vs[i], vs[j]));
      return d;
    }
    double operator()(const Square& s) const { return std::hypot(s.rect.width(), s.rect.height()); }
  };
  return std::visit(Visitor{}, kind_);
}

std::vector<Domain> decompose_polygon(const Polygon& poly) {
  std::vector<Point2> ring = poly.vertices;
  validate_polygon(ring);

  double scale = 0.0;
  for (const auto& p : ring) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double eps = 1e-14 * (1.0 + scale) * (1.0 + scale);

  std::vector<std::size_t> remaining(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) remaining[i] = i;

  // Drop vertices lying on the segment between their neighbours; they would
  // only produce zero-area ears.
  bool changed = true;
  while (changed && remaining.size() > 3) {
    changed = false;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      const std::size_t m = remaining.size();
      const Point2 a = ring[remaining[(k + m - 1) % m]];
      const Point2 b = ring[remaining[k]];
      const Point2 c = ring[remaining[(k + 1) % m]];
      if (std::abs(cross(b - a, c - b)) <= eps) {
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
        break;
      }
    }
  }

  std::vector<Domain> pieces;
  pieces.reserve(remaining.size() - 2);
  while (remaining.size() > 3) {
    const std::size_t m = remaining.size();
    bool clipped = false;
    for (std::size_t k = 0; k < m; ++k) {
      const Point2 a = ring[remaining[(k + m - 1) % m]];
      const Point2 b = ring[remaining[k]];
      const Point2 c = ring[remaining[(k + 1) % m]];
      if (cross(b - a, c - b) <= eps) continue;  // reflex or flat
      const Triangle candidate{a, b, c};
      bool blocked = false;
      for (std::size_t q = 0; q < m && !blocked; ++q) {
        if (q == k || q == (k + 1) % m || q == (k + m - 1) % m) continue;
        const Point2 p = ring[remaining[q]];
        if (p == a || p == b || p == c) continue;
        blocked = triangle_contains(candidate, p, 1e-14 * (1.0 + scale));
      }
      if (blocked) continue;
      pieces.push_back(Domain::triangle(a, b, c));
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
      break;
    }
    if (!clipped) throw NumericalError("ear clipping found no ear; polygon is numerically degenerate");
  }
  pieces.push_back(Domain::triangle(ring[remaining[0]], ring[remaining[1]], ring[remaining[2]]));
  return pieces;
}

namespace {

struct Chains {
  std::vector<Point2> lower;
  std::vector<Point2> upper;
};

Chains split_chains(const std::vector<Point2>& vs) {
  const std::size_t m = vs.size();
  std::size_t left = 0;
  std::size_t right = 0;
  for (std::size_t i = 1; i < m; ++i) {
    if (vs[i].x < vs[left].x || (vs[i].x == vs[left].x && vs[i].y < vs[left].y)) left = i;
    if (vs[i].x > vs[right].x || (vs[i].x == vs[right].x && vs[i].y > vs[right].y)) right = i;
  }
  Chains chains;
  // Counterclockwise from the leftmost vertex walks the lower boundary.
  for (std::size_t i = left;; i = (i + 1) % m) {
    chains.lower.push_back(vs[i]);
    if (i == right) break;
  }
  for (std::size_t i = left;; i = (i + m - 1) % m) {
    chains.upper.push_back(vs[i]);
    if (i == right) break;
  }
  return chains;
}

bool monotone(const std::vector<Point2>& chain) {
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (chain[i].x < chain[i - 1].x) return false;
  return true;
}

// Linear coefficients {c0, c1} of the chain segment spanning (x0, x1).
std::vector<double> chain_line(const std::vector<Point2>& chain, double x0, double x1) {
  const double xm = 0.5 * (x0 + x1);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const Point2 p = chain[i - 1];
    const Point2 q = chain[i];
    if (p.x < q.x && p.x <= xm && xm <= q.x) {
      const double slope = (q.y - p.y) / (q.x - p.x);
      return {p.y - slope * p.x, slope};
    }
  }
  throw NumericalError("trapezoid_panels: no chain segment spans the panel");
}

}  // namespace

bool is_x_monotone(const Polygon& poly) {
  const Chains chains = split_chains(poly.vertices);
  return monotone(chains.lower) && monotone(chains.upper);
}

std::vector<Domain> trapezoid_panels(const Polygon& poly) {
  std::vector<Point2> ring = poly.vertices;
  validate_polygon(ring);
  const Polygon normalized{ring};
  if (!is_x_monotone(normalized)) return decompose_polygon(normalized);

  const Chains chains = split_chains(ring);
  std::vector<double> xs;
  xs.reserve(ring.size());
  for (const auto& p : ring) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<Domain> panels;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = xs[i];
    const double b = xs[i + 1];
    auto lo = chain_line(chains.lower, a, b);
    auto hi = chain_line(chains.upper, a, b);
    // Snap the tiny negative gaps that rounding leaves at a shared vertex.
    for (double x : {a, b}) {
      const double gap = eval_poly(hi, x) - eval_poly(lo, x);
      if (gap < 0.0 && gap > -1e-13) hi[0] -= gap;
    }
    const bool linear = lo[1] != 0.0 || hi[1] != 0.0;
    if (!linear) {
      lo.resize(1);
      hi.resize(1);
    }
    panels.push_back(Domain::trapezoid(a, b, std::move(lo), std::move(hi)));
  }
  return panels;
}

}  // namespace wamfek
