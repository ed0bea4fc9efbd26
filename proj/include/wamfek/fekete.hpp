#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wamfek/basis.hpp"
#include "wamfek/geometry.hpp"
#include "wamfek/mesh.hpp"

namespace wamfek {

/// Relative tie window of the pivot rule: the lower column index wins.
inline constexpr double kPivotTieTol = 1e-14;
/// A residual column norm at or below this fraction of the largest initial
/// column norm counts as numerically zero.
inline constexpr double kRankTol = 1e-12;
/// Refinement rounds used when the caller does not choose.
inline constexpr int kDefaultRefinements = 2;

/// Output of the max-volume column selection on an N x M matrix.
struct GreedySelection {
  std::vector<std::size_t> indices;  // pick order
  std::vector<double> pivots;        // |R_kk|
  double log_abs_det = 0.0;          // log |det A(:, indices)|
};

/// Greedy max-volume selection of N = rows() columns: repeatedly take the
/// column with the largest residual norm and project it out of the others.
/// Implemented as Householder QR with column pivoting stopped after N steps.
/// Throws RankDeficientError naming the step where the best residual fell
/// below kRankTol times the largest initial column norm.
GreedySelection greedy_columns(const Eigen::Ref<const Eigen::MatrixXd>& matrix);

/// Basic solution of the underdetermined system A w = b (A is N x M, M >= N):
/// nonzero only on the greedy pivot columns.
Eigen::VectorXd basic_solution(const Eigen::Ref<const Eigen::MatrixXd>& matrix,
                               const Eigen::Ref<const Eigen::VectorXd>& rhs);

/// T = R_0^{-1} R_1^{-1} ... R_{s-1}^{-1}, kept as its upper-triangular
/// factors.  On ill-conditioned domains the explicit product has entries near
/// 1/eps and multiplying by it cancels catastrophically; triangular solves
/// with the factors stay backward stable.
class Transition {
 public:
  Transition() = default;
  explicit Transition(Eigen::Index size) : size_(size) {}

  Eigen::Index size() const { return size_; }
  bool is_identity() const { return factors_.empty(); }
  const std::vector<Eigen::MatrixXd>& factors() const { return factors_; }
  void push_factor(Eigen::MatrixXd upper);

  /// rows <- rows T.
  void apply_right(Eigen::MatrixXd& rows) const;
  /// T c.
  Eigen::VectorXd apply(const Eigen::VectorXd& c) const;
  /// T^T m.
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& m) const;
  /// The explicit N x N product (for reporting; avoid in numerics).
  Eigen::MatrixXd matrix() const;

 private:
  Eigen::Index size_ = 0;
  std::vector<Eigen::MatrixXd> factors_;
};

/// Refined basis values at the points, M x N: phi(points)^T T.
Eigen::MatrixXd working_basis_matrix(const BasisSpec& spec, const Transition& transition,
                                     std::span<const Point2> points);

struct RefinedBasis {
  Eigen::MatrixXd working;  // V_s, M x N: refined basis values, row per point
  Transition transition;    // T_s, V_s = V^T T_s
  std::vector<double> condition_history;  // cond(V_k), k = 0..s-1
};

/// s rounds of V_{k+1} = V_k R_k^{-1} starting from V_0 = V^T (V is N x M).
/// Throws RankDeficientError with the round index when some R_k is singular.
RefinedBasis refine_basis(const Eigen::Ref<const Eigen::MatrixXd>& vandermonde, int rounds);

struct RankReport {
  std::vector<double> condition_history;
  std::size_t numerical_rank = 0;
  double pivot_ratio = 0.0;  // |R_11| / |R_NN| of the greedy pivots
};

struct FeketeResult {
  BasisSpec basis;
  int refinements = 0;
  std::size_t mesh_size = 0;
  std::vector<std::size_t> indices;  // into the mesh, in pick order
  std::vector<Point2> points;
  Transition transition;             // T_s
  Eigen::MatrixXd selected;          // N x N, row i = working basis at points[i]
  double log_vdm_abs = 0.0;          // log |vdm| in the working basis
  double vdm_abs = 0.0;              // exp(log_vdm_abs); may underflow for large N
  std::optional<Eigen::VectorXd> weights;
  RankReport rank_report;

  std::size_t size() const { return indices.size(); }
};

/// Greedy selection on V with no basis refinement.
FeketeResult greedy_select(const VandermondeMatrix& v);

/// Approximate Fekete points: refine the basis s times, then select greedily.
FeketeResult extract_afp(const VandermondeMatrix& v, int refinements = kDefaultRefinements);
FeketeResult extract_afp(const Mesh& mesh, const BasisSpec& spec, int refinements = kDefaultRefinements);

/// Integrals of the basis elements over a domain.
struct MomentVector {
  Eigen::VectorXd values;
};

MomentVector moments(const Domain& dom, const BasisSpec& spec);

/// Moments re-expressed in the refined basis of `result` (T_s^T m).
MomentVector to_working_basis(const FeketeResult& result, const MomentVector& moments);

/// Weights w solving selected^T w = b, so that sum w_i f(x_i) is exact on P^2_n.
/// `moments` must already be in the working basis.
Eigen::VectorXd cubature_weights(const FeketeResult& result, const MomentVector& moments);

/// Condition number sigma_max / sigma_min of a tall or square matrix.
double condition_number(const Eigen::Ref<const Eigen::MatrixXd>& matrix);

}  // namespace wamfek
