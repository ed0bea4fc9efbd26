#include "wamfek/fekete.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wamfek/error.hpp"
#include "wamfek/quadrature.hpp"

namespace wamfek {

GreedySelection greedy_columns(const Eigen::Ref<const Eigen::MatrixXd>& matrix) {
  const Eigen::Index n = matrix.rows();
  const Eigen::Index m = matrix.cols();
  if (n == 0) return {};
  if (m < n) {
    throw RankDeficientError("cannot select " + std::to_string(n) + " columns out of " + std::to_string(m), 0);
  }
  if (!matrix.allFinite()) throw NumericalError("greedy selection: matrix has non-finite entries");

  Eigen::MatrixXd a = matrix;
  Eigen::RowVectorXd norms = a.colwise().norm();
  const double threshold = kRankTol * norms.maxCoeff();
  std::vector<char> taken(static_cast<std::size_t>(m), 0);
  Eigen::VectorXd reflector(n);
  Eigen::RowVectorXd projections(m);

  GreedySelection sel;
  sel.indices.reserve(static_cast<std::size_t>(n));
  sel.pivots.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index rest = n - k;
    if (k > 0) norms = a.bottomRows(rest).colwise().norm();

    Eigen::Index best = -1;
    double best_norm = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (taken[static_cast<std::size_t>(j)]) continue;
      if (best < 0 || norms(j) > best_norm * (1.0 + kPivotTieTol)) {
        best = j;
        best_norm = norms(j);
      }
    }
    if (!(best_norm > threshold)) {
      std::ostringstream os;
      os << "numerically rank-deficient Vandermonde: largest residual column norm " << best_norm
         << " fell below " << threshold << " at step " << k << " of " << n;
      throw RankDeficientError(os.str(), static_cast<std::size_t>(k));
    }

    // Householder reflector mapping the pivot column onto -sign(x0)|x| e_k.
    auto x = a.col(best).tail(rest);
    const double alpha = x(0) >= 0.0 ? -best_norm : best_norm;
    auto v = reflector.head(rest);
    v = x;
    v(0) -= alpha;
    const double v_norm2 = v.squaredNorm();
    if (v_norm2 > 0.0) {
      auto block = a.bottomRows(rest);
      projections.noalias() = v.transpose() * block;
      block.noalias() -= (2.0 / v_norm2) * v * projections;
    }

    taken[static_cast<std::size_t>(best)] = 1;
    sel.indices.push_back(static_cast<std::size_t>(best));
    sel.pivots.push_back(best_norm);
    sel.log_abs_det += std::log(best_norm);
  }
  return sel;
}

Eigen::VectorXd basic_solution(const Eigen::Ref<const Eigen::MatrixXd>& matrix,
                               const Eigen::Ref<const Eigen::VectorXd>& rhs) {
  if (rhs.size() != matrix.rows()) throw ConfigError("basic_solution: right-hand side has the wrong length");
  const GreedySelection sel = greedy_columns(matrix);
  const auto n = matrix.rows();
  Eigen::MatrixXd square(n, n);
  for (Eigen::Index i = 0; i < n; ++i) square.col(i) = matrix.col(static_cast<Eigen::Index>(sel.indices[static_cast<std::size_t>(i)]));
  const Eigen::VectorXd local = square.colPivHouseholderQr().solve(rhs);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(matrix.cols());
  for (Eigen::Index i = 0; i < n; ++i) w(static_cast<Eigen::Index>(sel.indices[static_cast<std::size_t>(i)])) = local(i);
  return w;
}

double condition_number(const Eigen::Ref<const Eigen::MatrixXd>& matrix) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double lo = s(s.size() - 1);
  return lo > 0.0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

void Transition::push_factor(Eigen::MatrixXd upper) {
  if (upper.rows() != size_ || upper.cols() != size_) throw ConfigError("transition factor has the wrong size");
  factors_.push_back(std::move(upper));
}

void Transition::apply_right(Eigen::MatrixXd& rows) const {
  for (const auto& r : factors_) r.triangularView<Eigen::Upper>().solveInPlace<Eigen::OnTheRight>(rows);
}

Eigen::VectorXd Transition::apply(const Eigen::VectorXd& c) const {
  Eigen::VectorXd out = c;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) it->triangularView<Eigen::Upper>().solveInPlace(out);
  return out;
}

Eigen::VectorXd Transition::apply_transpose(const Eigen::VectorXd& m) const {
  Eigen::VectorXd out = m;
  for (const auto& r : factors_) r.transpose().triangularView<Eigen::Lower>().solveInPlace(out);
  return out;
}

Eigen::MatrixXd Transition::matrix() const {
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(size_, size_);
  apply_right(t);
  return t;
}

Eigen::MatrixXd working_basis_matrix(const BasisSpec& spec, const Transition& transition,
                                     std::span<const Point2> points) {
  Eigen::MatrixXd rows = basis_matrix(spec, points).transpose();
  transition.apply_right(rows);
  return rows;
}

RefinedBasis refine_basis(const Eigen::Ref<const Eigen::MatrixXd>& vandermonde, int rounds) {
  if (rounds < 0) throw ConfigError("refine_basis: refinement count must be >= 0");
  const Eigen::Index n = vandermonde.rows();
  if (vandermonde.cols() < n) {
    throw RankDeficientError("refine_basis: fewer points than basis elements", 0);
  }
  RefinedBasis out;
  out.working = vandermonde.transpose();
  out.transition = Transition(n);
  for (int round = 0; round < rounds; ++round) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(out.working);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (r(i, i) == 0.0 || !std::isfinite(r(i, i))) {
        std::ostringstream os;
        os << "refine_basis: triangular factor is singular at round " << round << " (R(" << i << "," << i
           << ") = " << r(i, i) << ")";
        throw RankDeficientError(os.str(), static_cast<std::size_t>(round));
      }
    }
    out.condition_history.push_back(condition_number(r));
    r.triangularView<Eigen::Upper>().solveInPlace<Eigen::OnTheRight>(out.working);
    out.transition.push_factor(r);
  }
  return out;
}

FeketeResult extract_afp(const VandermondeMatrix& v, int refinements) {
  RefinedBasis refined = refine_basis(v.entries, refinements);
  const GreedySelection sel = greedy_columns(refined.working.transpose());

  FeketeResult result;
  result.basis = v.basis;
  result.refinements = refinements;
  result.mesh_size = v.points.size();
  result.indices = sel.indices;
  const auto n = static_cast<Eigen::Index>(sel.indices.size());
  result.selected.resize(n, refined.working.cols());
  result.points.reserve(sel.indices.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t idx = sel.indices[static_cast<std::size_t>(i)];
    result.points.push_back(v.points[idx]);
    result.selected.row(i) = refined.working.row(static_cast<Eigen::Index>(idx));
  }
  result.transition = std::move(refined.transition);
  result.log_vdm_abs = sel.log_abs_det;
  result.vdm_abs = std::exp(sel.log_abs_det);
  result.rank_report.condition_history = std::move(refined.condition_history);
  result.rank_report.numerical_rank = sel.indices.size();
  result.rank_report.pivot_ratio = sel.pivots.empty() ? 1.0 : sel.pivots.front() / sel.pivots.back();
  return result;
}

FeketeResult extract_afp(const Mesh& mesh, const BasisSpec& spec, int refinements) {
  return extract_afp(vandermonde(spec, mesh), refinements);
}

FeketeResult greedy_select(const VandermondeMatrix& v) { return extract_afp(v, 0); }

MomentVector moments(const Domain& dom, const BasisSpec& spec) {
  const CubatureRule rule = domain_quadrature(dom, spec.degree);
  const Eigen::MatrixXd values = basis_matrix(spec, rule.points);
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
  return {values * w};
}

MomentVector to_working_basis(const FeketeResult& result, const MomentVector& m) {
  if (m.values.size() != result.transition.size()) throw ConfigError("moment vector has the wrong length");
  return {result.transition.apply_transpose(m.values)};
}

Eigen::VectorXd cubature_weights(const FeketeResult& result, const MomentVector& m) {
  if (m.values.size() != result.selected.rows()) throw ConfigError("moment vector has the wrong length");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(result.selected.transpose());
  const Eigen::VectorXd w = lu.solve(m.values);
  if (!(lu.rcond() > 0.0) || !w.allFinite()) {
    throw NumericalError("cubature_weights: square Vandermonde of the selected points is singular");
  }
  return w;
}

}  // namespace wamfek
