#include "wamfek/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "wamfek/error.hpp"

namespace wamfek {

GaussRule gauss_legendre(int points) {
  if (points < 1) throw ConfigError("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(points));
  rule.weights.resize(static_cast<std::size_t>(points));
  const int n = points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

namespace {

// Gauss points needed for exactness on [-1,1] up to `degree`.
int points_for(int degree) { return degree / 2 + 1; }

void append_mapped(const Domain& dom, int degree, CubatureRule& rule) {
  struct Visitor {
    int degree;
    CubatureRule& rule;

    void operator()(const UnitDisk&) const {
      // r^(a+1) with a <= degree; trigonometric degree <= degree in phi.
      const GaussRule radial = gauss_legendre(points_for(degree + 1));
      const int n_phi = degree + 1;
      for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
        const double r = 0.5 * (radial.nodes[i] + 1.0);
        const double wr = 0.5 * radial.weights[i] * r * 2.0 * std::numbers::pi / n_phi;
        for (int k = 0; k < n_phi; ++k) {
          const double phi = 2.0 * std::numbers::pi * k / n_phi;
          rule.points.push_back({r * std::cos(phi), r * std::sin(phi)});
          rule.weights.push_back(wr);
        }
      }
    }
    void operator()(const Triangle& t) const {
      // p o duffy has degree 2*degree; the Jacobian adds one in y2.
      const GaussRule g = gauss_legendre(points_for(2 * degree + 1));
      const double jac0 = std::abs(cross(t.v - t.u, t.w - t.u)) / 8.0;
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
          const Point2 y{g.nodes[i], g.nodes[j]};
          rule.points.push_back(duffy_map(t.u, t.v, t.w, y));
          rule.weights.push_back(g.weights[i] * g.weights[j] * jac0 * (1.0 - y.y));
        }
      }
    }
    void operator()(const PolyTrapezoid& t) const {
      const int nu = static_cast<int>(std::max(t.g1.size(), t.g2.size())) - 1;
      const GaussRule g = gauss_legendre(points_for((nu + 1) * degree + nu));
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double x1 = 0.5 * (t.b - t.a) * g.nodes[i] + 0.5 * (t.b + t.a);
        const double height = eval_poly(t.g2, x1) - eval_poly(t.g1, x1);
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
          rule.points.push_back(trapezoid_map(t, {g.nodes[i], g.nodes[j]}));
          rule.weights.push_back(g.weights[i] * g.weights[j] * 0.25 * (t.b - t.a) * height);
        }
      }
    }
    void operator()(const Polygon& poly) const {
      for (const auto& piece : decompose_polygon(poly)) append_mapped(piece, degree, rule);
    }
    void operator()(const Square& s) const {
      const GaussRule g = gauss_legendre(points_for(degree));
      const Rect& r = s.rect;
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
          rule.points.push_back({0.5 * r.width() * g.nodes[i] + 0.5 * (r.x_hi + r.x_lo),
                                 0.5 * r.height() * g.nodes[j] + 0.5 * (r.y_hi + r.y_lo)});
          rule.weights.push_back(g.weights[i] * g.weights[j] * 0.25 * r.width() * r.height());
        }
      }
    }
  };
  std::visit(Visitor{degree, rule}, dom.kind());
}

}  // namespace

CubatureRule domain_quadrature(const Domain& dom, int degree) {
  if (degree < 0) throw ConfigError("domain_quadrature: degree must be >= 0");
  CubatureRule rule;
  append_mapped(dom, degree, rule);
  return rule;
}

}  // namespace wamfek
