#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wamfek/geometry.hpp"
#include "wamfek/mesh.hpp"

namespace wamfek {

enum class BasisFamily { Monomial, ProductChebyshev, LoganShepp };

/// Parses "mon", "cheb" or "logan-shepp".
BasisFamily parse_basis_family(std::string_view name);
std::string_view to_string(BasisFamily family);

/// An ordered basis of P^2_n.  Elements are enumerated by total degree; for
/// the tensor families element (a, b) of degree d = a+b comes before (a-1, b+1).
/// When `box` is set, Monomial and ProductChebyshev act on the coordinates
/// mapped affinely from the box onto [-1,1]^2.
struct BasisSpec {
  BasisFamily family = BasisFamily::ProductChebyshev;
  int degree = 0;
  std::optional<Rect> box;

  std::size_t size() const { return poly_dim(degree); }

  /// Basis on the bounding box of `dom` (Logan-Shepp ignores the box).
  static BasisSpec for_domain(BasisFamily family, int degree, const Domain& dom);
};

/// Exponent pairs (a, b) in basis order.
std::vector<std::pair<int, int>> degree_lex_exponents(int n);

/// Writes the N basis values at `pt` into `out`.
void eval_basis(const BasisSpec& spec, Point2 pt, std::span<double> out);
Eigen::VectorXd eval_basis(const BasisSpec& spec, Point2 pt);

/// N x M matrix of basis values, column j at points[j].  No cardinality check.
Eigen::MatrixXd basis_matrix(const BasisSpec& spec, std::span<const Point2> points);

/// V = [p_i(a_j)] together with the orderings that produced it.
struct VandermondeMatrix {
  Eigen::MatrixXd entries;  // N x M
  BasisSpec basis;
  std::vector<Point2> points;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

/// Throws RankDeficientError when the mesh has fewer than N points.
VandermondeMatrix vandermonde(const BasisSpec& spec, const Mesh& mesh);

/// max |<p_i, p_j> - delta_ij| over the unit disk, by polar Gauss quadrature.
/// Only defined for the Logan-Shepp family.
double orthonormality_defect(const BasisSpec& spec);

}  // namespace wamfek
