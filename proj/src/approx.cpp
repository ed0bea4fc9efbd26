#include "wamfek/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "wamfek/error.hpp"

namespace wamfek {

namespace {

constexpr std::size_t kBlock = 2048;

// Calls fn(first, rows) for consecutive blocks of points, rows being the
// working-basis values (count x N).
template <typename Fn>
void for_each_block(const BasisSpec& spec, const Transition& transition, std::span<const Point2> points, Fn&& fn) {
  for (std::size_t first = 0; first < points.size(); first += kBlock) {
    const std::size_t count = std::min(kBlock, points.size() - first);
    const Eigen::MatrixXd rows = working_basis_matrix(spec, transition, points.subspan(first, count));
    fn(first, rows);
  }
}

}  // namespace

double TestFunction::operator()(Point2 p) const {
  const double x = unit_square ? 2.0 * p.x - 1.0 : p.x;
  const double y = unit_square ? 2.0 * p.y - 1.0 : p.y;
  const double r2 = x * x + y * y;
  switch (id) {
    case 1: return std::cos(x + y);
    case 2: return 1.0 / (1.0 + 16.0 * r2);
    case 3: return r2 * std::sqrt(r2);
    default: break;
  }
  throw ConfigError("unknown test function " + std::to_string(id));
}

TestFunction test_function(int id, bool unit_square) {
  if (id < 1 || id > 3) throw ConfigError("test function id must be 1, 2 or 3");
  return {id, unit_square};
}

std::string_view to_string(ApproxKind kind) {
  return kind == ApproxKind::LeastSquares ? "LS" : "interp";
}

Eigen::VectorXd PolyApprox::basis_coefficients() const {
  return transition.apply(coefficients);
}

double PolyApprox::operator()(Point2 p) const {
  return evaluate(std::span<const Point2>(&p, 1))(0);
}

Eigen::VectorXd PolyApprox::evaluate(std::span<const Point2> points) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
  for_each_block(basis, transition, points, [&](std::size_t first, const Eigen::MatrixXd& rows) {
    out.segment(static_cast<Eigen::Index>(first), rows.rows()).noalias() = rows * coefficients;
  });
  return out;
}

std::vector<PolyApprox> least_squares_fit(std::span<const ScalarFunction> fs, const Mesh& mesh,
                                          const BasisSpec& spec, int refinements) {
  const VandermondeMatrix v = vandermonde(spec, mesh);
  Eigen::MatrixXd rhs(static_cast<Eigen::Index>(mesh.size()), static_cast<Eigen::Index>(fs.size()));
  for (std::size_t k = 0; k < fs.size(); ++k)
    for (std::size_t i = 0; i < mesh.size(); ++i)
      rhs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = fs[k](mesh.points[i]);

  Transition transition(static_cast<Eigen::Index>(spec.size()));
  Eigen::MatrixXd design;
  if (refinements > 0) {
    RefinedBasis refined = refine_basis(v.entries, refinements);
    design = std::move(refined.working);
    transition = std::move(refined.transition);
  } else {
    design = v.entries.transpose();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design.rows(), design.cols());
  qr.setThreshold(static_cast<double>(std::max(design.rows(), design.cols())) *
                  std::numeric_limits<double>::epsilon());
  qr.compute(design);
  if (qr.rank() < design.cols()) {
    std::ostringstream os;
    os << "least squares: transposed Vandermonde has numerical rank " << qr.rank() << " < " << design.cols()
       << "; basis and mesh do not match at degree " << spec.degree;
    throw RankDeficientError(os.str(), static_cast<std::size_t>(qr.rank()));
  }
  const Eigen::MatrixXd coeffs = qr.solve(rhs);

  std::vector<PolyApprox> out(fs.size());
  for (std::size_t k = 0; k < fs.size(); ++k) {
    out[k].basis = spec;
    out[k].kind = ApproxKind::LeastSquares;
    out[k].transition = transition;
    out[k].coefficients = coeffs.col(static_cast<Eigen::Index>(k));
  }
  return out;
}

PolyApprox least_squares_fit(const ScalarFunction& f, const Mesh& mesh, const BasisSpec& spec, int refinements) {
  return least_squares_fit(std::span<const ScalarFunction>(&f, 1), mesh, spec, refinements).front();
}

PolyApprox interpolate(const ScalarFunction& f, const FeketeResult& result) {
  const auto n = static_cast<Eigen::Index>(result.size());
  Eigen::VectorXd values(n);
  for (Eigen::Index i = 0; i < n; ++i) values(i) = f(result.points[static_cast<std::size_t>(i)]);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(result.selected);
  if (!(lu.rcond() > 0.0)) throw NumericalError("interpolate: degenerate node set (singular Vandermonde)");

  PolyApprox approx;
  approx.basis = result.basis;
  approx.kind = ApproxKind::Interpolant;
  approx.transition = result.transition;
  approx.coefficients = lu.solve(values);
  if (!approx.coefficients.allFinite()) throw NumericalError("interpolate: non-finite coefficients");
  return approx;
}

namespace {

// l(z)^T = psi(z)^T S^{-1}, psi the working basis and S = result.selected.
struct CardinalSolver {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;

  explicit CardinalSolver(const FeketeResult& result) : lu(result.selected.transpose()) {
    if (!(lu.rcond() > 0.0)) throw NumericalError("singular Vandermonde at the selected nodes");
  }
  Eigen::MatrixXd operator()(const Eigen::MatrixXd& rows) const { return lu.solve(rows.transpose()).transpose(); }
};

}  // namespace

Eigen::MatrixXd cardinal_values(const FeketeResult& result, std::span<const Point2> points) {
  const CardinalSolver solve(result);
  return solve(working_basis_matrix(result.basis, result.transition, points));
}

double lebesgue_constant(const FeketeResult& result, const Mesh& control, double min_ratio) {
  if (static_cast<double>(control.size()) < min_ratio * static_cast<double>(result.mesh_size)) {
    std::ostringstream os;
    os << "control mesh too coarse: " << control.size() << " points, need at least " << min_ratio << " x "
       << result.mesh_size;
    throw ConfigError(os.str());
  }
  const CardinalSolver solve(result);
  double lambda = 0.0;
  for_each_block(result.basis, result.transition, control.points, [&](std::size_t, const Eigen::MatrixXd& rows) {
    lambda = std::max(lambda, solve(rows).cwiseAbs().rowwise().sum().maxCoeff());
  });
  return lambda;
}

double uniform_error(const PolyApprox& approx, const ScalarFunction& f, const Mesh& control) {
  const Eigen::VectorXd p = approx.evaluate(control.points);
  double err = 0.0;
  for (std::size_t i = 0; i < control.size(); ++i) {
    err = std::max(err, std::abs(f(control.points[i]) - p(static_cast<Eigen::Index>(i))));
  }
  return err;
}

double sampled_wam_constant(const Mesh& mesh, const Mesh& control, const BasisSpec& spec, int samples,
                            std::uint64_t seed) {
  if (samples < 1) throw ConfigError("sampled_wam_constant: need at least one sample");
  const RefinedBasis refined = refine_basis(vandermonde(spec, mesh).entries, 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd coeffs(refined.working.cols(), samples);
  for (Eigen::Index j = 0; j < coeffs.cols(); ++j)
    for (Eigen::Index i = 0; i < coeffs.rows(); ++i) coeffs(i, j) = normal(rng);

  const Eigen::RowVectorXd on_mesh = (refined.working * coeffs).cwiseAbs().colwise().maxCoeff();
  Eigen::RowVectorXd on_control = Eigen::RowVectorXd::Zero(samples);
  for_each_block(spec, refined.transition, control.points, [&](std::size_t, const Eigen::MatrixXd& rows) {
    on_control = on_control.cwiseMax((rows * coeffs).cwiseAbs().colwise().maxCoeff());
  });
  return (on_control.array() / on_mesh.array()).maxCoeff();
}

}  // namespace wamfek
