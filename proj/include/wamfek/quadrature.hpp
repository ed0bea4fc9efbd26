#pragma once

#include <vector>

#include "wamfek/geometry.hpp"

namespace wamfek {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int points);

/// Positive-weight cubature on a domain.
struct CubatureRule {
  std::vector<Point2> points;
  std::vector<double> weights;
};

/// Product Gauss rule pulled back through the domain map (polar coordinates
/// for the disk, triangle pieces for polygons).  Exact for every polynomial
/// of total degree <= `degree`.
CubatureRule domain_quadrature(const Domain& dom, int degree);

}  // namespace wamfek
