#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "wamfek/basis.hpp"
#include "wamfek/fekete.hpp"
#include "wamfek/mesh.hpp"

namespace wamfek {

using ScalarFunction = std::function<double(Point2)>;

/// The three reference functions: cos(x+y), the bivariate Runge function
/// 1/(1+16(x^2+y^2)) and (x^2+y^2)^(3/2).
struct TestFunction {
  int id = 1;
  /// Evaluate f(2x-1, 2y-1): the function is posed on [0,1]^2 instead of [-1,1]^2.
  bool unit_square = false;

  double operator()(Point2 p) const;
};

TestFunction test_function(int id, bool unit_square = false);

enum class ApproxKind { LeastSquares, Interpolant };

std::string_view to_string(ApproxKind kind);

/// p(x) = phi(x)^T T c, where phi is the basis, T a (factored) transition
/// matrix and c the coefficient vector in the working basis.
struct PolyApprox {
  BasisSpec basis;
  ApproxKind kind = ApproxKind::LeastSquares;
  Transition transition;
  Eigen::VectorXd coefficients;

  int degree() const { return basis.degree; }
  /// Coefficients in the plain basis, T c.  Evaluation never goes through
  /// these: on ill-conditioned domains they are huge and cancel.
  Eigen::VectorXd basis_coefficients() const;

  double operator()(Point2 p) const;
  Eigen::VectorXd evaluate(std::span<const Point2> points) const;
};

/// Discrete least squares on the mesh by column-pivoted QR of V^T.  With
/// refinements > 0 the fit is done in the refined (discretely orthonormal) basis.
/// Throws RankDeficientError when V^T has numerical rank below N.
PolyApprox least_squares_fit(const ScalarFunction& f, const Mesh& mesh, const BasisSpec& spec,
                             int refinements = 0);

/// Several right-hand sides sharing one factorization.
std::vector<PolyApprox> least_squares_fit(std::span<const ScalarFunction> fs, const Mesh& mesh,
                                          const BasisSpec& spec, int refinements = 0);

/// Interpolant at the selected points, solved in the working basis of `result`.
PolyApprox interpolate(const ScalarFunction& f, const FeketeResult& result);

/// Cardinal functions l_i at the points, M x N (column i is l_i).
Eigen::MatrixXd cardinal_values(const FeketeResult& result, std::span<const Point2> points);

/// max over the control mesh of sum_i |l_i(z)|.  The control mesh must have at
/// least `min_ratio` times as many points as the extraction mesh.
double lebesgue_constant(const FeketeResult& result, const Mesh& control, double min_ratio = 4.0);

/// max over the control mesh of |f - p|.
double uniform_error(const PolyApprox& approx, const ScalarFunction& f, const Mesh& control);

/// Empirical WAM constant: the largest ratio ||p||_control / ||p||_mesh over
/// `samples` random polynomials (standard normal coefficients in the basis
/// made discretely orthonormal on the mesh).  Deterministic for a given seed.
double sampled_wam_constant(const Mesh& mesh, const Mesh& control, const BasisSpec& spec, int samples,
                            std::uint64_t seed);

}  // namespace wamfek
