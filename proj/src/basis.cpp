#include "wamfek/basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wamfek/error.hpp"
#include "wamfek/quadrature.hpp"

namespace wamfek {

namespace {

Point2 to_box(const std::optional<Rect>& box, Point2 p) {
  if (!box) return p;
  return {(2.0 * p.x - (box->x_lo + box->x_hi)) / box->width(),
          (2.0 * p.y - (box->y_lo + box->y_hi)) / box->height()};
}

// Fills values[0..n] with a three-term family: T_k (second = false) or U_k.
void chebyshev_values(double t, int n, bool second, double* values) {
  values[0] = 1.0;
  if (n == 0) return;
  values[1] = second ? 2.0 * t : t;
  for (int k = 1; k < n; ++k) values[k + 1] = 2.0 * t * values[k] - values[k - 1];
}

}  // namespace

BasisFamily parse_basis_family(std::string_view name) {
  if (name == "mon" || name == "monomial") return BasisFamily::Monomial;
  if (name == "cheb" || name == "chebyshev") return BasisFamily::ProductChebyshev;
  if (name == "logan-shepp" || name == "los") return BasisFamily::LoganShepp;
  throw ConfigError("unknown basis '" + std::string(name) + "' (expected mon, cheb or logan-shepp)");
}

std::string_view to_string(BasisFamily family) {
  switch (family) {
    case BasisFamily::Monomial: return "mon";
    case BasisFamily::ProductChebyshev: return "cheb";
    case BasisFamily::LoganShepp: return "logan-shepp";
  }
  return "?";
}

BasisSpec BasisSpec::for_domain(BasisFamily family, int degree, const Domain& dom) {
  BasisSpec spec{family, degree, std::nullopt};
  if (family != BasisFamily::LoganShepp) spec.box = dom.bounding_box();
  return spec;
}

std::vector<std::pair<int, int>> degree_lex_exponents(int n) {
  std::vector<std::pair<int, int>> exps;
  exps.reserve(poly_dim(n));
  for (int d = 0; d <= n; ++d)
    for (int a = d; a >= 0; --a) exps.emplace_back(a, d - a);
  return exps;
}

void eval_basis(const BasisSpec& spec, Point2 pt, std::span<double> out) {
  const int n = spec.degree;
  if (n < 0) throw ConfigError("basis degree must be >= 0");
  if (out.size() != spec.size()) throw ConfigError("eval_basis: output span has the wrong length");
  // Small fixed buffers: degrees beyond a few hundred are never meaningful.
  thread_local std::vector<double> xs, ys;
  xs.resize(static_cast<std::size_t>(n) + 1);
  ys.resize(static_cast<std::size_t>(n) + 1);

  if (spec.family == BasisFamily::LoganShepp) {
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    std::size_t idx = 0;
    for (int k = 0; k <= n; ++k) {
      for (int j = 0; j <= k; ++j) {
        const double theta = std::numbers::pi * j / (k + 1);
        const double t = pt.x * std::cos(theta) + pt.y * std::sin(theta);
        // U_k(t) via the recurrence; xs is scratch.
        chebyshev_values(t, k, true, xs.data());
        out[idx++] = inv_sqrt_pi * xs[static_cast<std::size_t>(k)];
      }
    }
    return;
  }

  const Point2 q = to_box(spec.box, pt);
  if (spec.family == BasisFamily::ProductChebyshev) {
    chebyshev_values(q.x, n, false, xs.data());
    chebyshev_values(q.y, n, false, ys.data());
  } else {
    xs[0] = ys[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
      xs[static_cast<std::size_t>(k)] = xs[static_cast<std::size_t>(k - 1)] * q.x;
      ys[static_cast<std::size_t>(k)] = ys[static_cast<std::size_t>(k - 1)] * q.y;
    }
  }
  std::size_t idx = 0;
  for (int d = 0; d <= n; ++d)
    for (int a = d; a >= 0; --a) out[idx++] = xs[static_cast<std::size_t>(a)] * ys[static_cast<std::size_t>(d - a)];
}

Eigen::VectorXd eval_basis(const BasisSpec& spec, Point2 pt) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(spec.size()));
  eval_basis(spec, pt, std::span<double>(v.data(), static_cast<std::size_t>(v.size())));
  return v;
}

Eigen::MatrixXd basis_matrix(const BasisSpec& spec, std::span<const Point2> points) {
  const auto n_rows = static_cast<Eigen::Index>(spec.size());
  Eigen::MatrixXd m(n_rows, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    eval_basis(spec, points[j], std::span<double>(m.col(static_cast<Eigen::Index>(j)).data(), spec.size()));
  }
  return m;
}

VandermondeMatrix vandermonde(const BasisSpec& spec, const Mesh& mesh) {
  if (mesh.size() < spec.size()) {
    throw RankDeficientError("mesh with " + std::to_string(mesh.size()) +
                                 " points is not polynomial-determining at degree " +
                                 std::to_string(spec.degree) + " (needs " + std::to_string(spec.size()) + ")",
                             0);
  }
  return {basis_matrix(spec, mesh.points), spec, mesh.points};
}

double orthonormality_defect(const BasisSpec& spec) {
  if (spec.family != BasisFamily::LoganShepp) {
    throw ConfigError("orthonormality_defect is only defined for the Logan-Shepp basis");
  }
  // Integrand p_i p_j has degree 2n; in polar form r^(2n+1) in r and a
  // trigonometric polynomial of degree 2n in phi.
  const int n = spec.degree;
  const GaussRule radial = gauss_legendre(n + 2);
  const int n_phi = 2 * n + 2;
  const auto size = static_cast<Eigen::Index>(spec.size());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(size, size);
  Eigen::VectorXd values(size);
  for (std::size_t a = 0; a < radial.nodes.size(); ++a) {
    const double r = 0.5 * (radial.nodes[a] + 1.0);
    const double wr = 0.5 * radial.weights[a] * r;
    for (int k = 0; k < n_phi; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / n_phi;
      eval_basis(spec, {r * std::cos(phi), r * std::sin(phi)},
                 std::span<double>(values.data(), static_cast<std::size_t>(size)));
      gram.selfadjointView<Eigen::Lower>().rankUpdate(values, wr * 2.0 * std::numbers::pi / n_phi);
    }
  }
  Eigen::MatrixXd full = gram.selfadjointView<Eigen::Lower>();
  return (full - Eigen::MatrixXd::Identity(size, size)).cwiseAbs().maxCoeff();
}

}  // namespace wamfek
