#include "ktu/separators.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "ktu/bounds.hpp"
#include "ktu/errors.hpp"

namespace ktu {

LinearFunctional LinearFunctional::from_unnormalized(const Eigen::VectorXd& w,
                                                     double raw_offset) {
  const double norm = w.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw NumericError("linear functional: zero or non-finite direction");
  return LinearFunctional{w / norm, raw_offset / norm};
}

}  // namespace ktu

namespace ktu::mc {

namespace {

// Tightest cluster correlation constants: min/max over members of the
// average off-diagonal Gram row sum. Zero by convention for singletons.
void gram_betas(const Eigen::MatrixXd& Y, double& beta1, double& beta2) {
  const Eigen::Index m = Y.rows();
  if (m <= 1) {
    beta1 = beta2 = 0.0;
    return;
  }
  const Eigen::MatrixXd gram = Y * Y.transpose();
  beta1 = -std::numeric_limits<double>::infinity();
  beta2 = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m; ++i) {
    const double s = (gram.row(i).sum() - gram(i, i)) / static_cast<double>(m - 1);
    beta1 = std::max(beta1, s);
    beta2 = std::min(beta2, s);
  }
}

}  // namespace

LinearFunctional mean_separator(const Eigen::MatrixXd& Y, OffsetMode mode,
                                const TheoremParams& params) {
  const Eigen::Index m = Y.rows();
  if (m < 1) throw ConstraintError("mean_separator: Y must be nonempty");
  const Eigen::VectorXd mean = Y.colwise().mean();
  const double norm = mean.norm();
  if (!(norm > 0.0))
    throw NumericError("mean_separator: zero mean vector (degenerate direction)");
  const Eigen::VectorXd dir = mean / norm;

  double offset = 0.0;
  if (mode == OffsetMode::algorithmic) {
    offset = (Y * dir).minCoeff();
  } else {
    double eps;
    if (params.eps) {
      eps = *params.eps;
    } else {
      eps = 1.0 - Y.rowwise().norm().minCoeff();
    }
    double b1 = 0.0, b2 = 0.0;
    gram_betas(Y, b1, b2);
    if (params.beta1) b1 = *params.beta1;
    if (params.beta2) b2 = *params.beta2;
    const double mm1 = static_cast<double>(m - 1);
    const double den = 1.0 + mm1 * b1;
    if (!(den > 0.0))
      throw ConstraintError("mean_separator: 1 + (m-1) beta1 > 0 violated");
    offset = ((1.0 - eps) * (1.0 - eps) + b2 * mm1) /
             (std::sqrt(static_cast<double>(m)) * std::sqrt(den));
  }
  return LinearFunctional{dir, offset};
}

SeparatorOutcome thm1_separator(const Eigen::MatrixXd& Y) {
  const Eigen::Index k = Y.rows();
  const Eigen::Index n = Y.cols();
  if (k < 1) throw ConstraintError("thm1_separator: Y must be nonempty");

  const auto fallback = [&Y]() {
    return SeparatorOutcome{mean_separator(Y, OffsetMode::algorithmic), true};
  };

  const Eigen::VectorXd norms = Y.rowwise().norm();
  if (!(norms.minCoeff() > 0.0))
    throw ConstraintError("thm1_separator: points must be nonzero");

  const double rho = norms.minCoeff();  // common sphere radius 1 - eps_hat
  const double eps_hat = 1.0 - rho;

  // Rescaled points on the sphere of radius rho.
  Eigen::MatrixXd hat(k, n);
  for (Eigen::Index i = 0; i < k; ++i) hat.row(i) = Y.row(i) * (rho / norms[i]);

  // delta_hat = rho * max |cos| over pairs of the rescaled points.
  double max_cos = 0.0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double c = std::abs(hat.row(i).dot(hat.row(j))) / (rho * rho);
      max_cos = std::max(max_cos, c);
    }
  const double delta_hat = rho * max_cos;

  // Feasibility of the estimated parameters under the ball-bound
  // constraints; the closed endpoints 0 are legitimate analytic limits.
  const double km1 = static_cast<double>(k - 1);
  const bool feasible =
      eps_hat >= 0.0 && eps_hat < 1.0 && delta_hat >= 0.0 && delta_hat < 1.0 &&
      1.0 - km1 * delta_hat * delta_hat >= 0.0 &&
      (k <= 1 ||
       std::log(km1) + 0.5 * static_cast<double>(n) *
                           std::log1p(-delta_hat * delta_hat) <= 0.0) &&
      (1.0 - eps_hat) * std::sqrt(1.0 - km1 * delta_hat * delta_hat) /
              std::sqrt(static_cast<double>(k)) -
          std::sqrt(km1) * delta_hat >= 0.0;
  if (!feasible) return fallback();

  // Orthogonal surrogate frame in sample order.
  Eigen::MatrixXd q(k, n);
  for (Eigen::Index i = 0; i < k; ++i) {
    Eigen::VectorXd h = hat.row(i).transpose();
    for (Eigen::Index j = 0; j < i; ++j)
      h -= q.row(j).dot(hat.row(i)) * q.row(j).transpose();
    const double hn = h.norm();
    if (!(hn > 1e-12 * rho)) return fallback();  // linearly dependent Y
    q.row(i) = (h / hn).transpose();
  }

  // Averaged frame direction; orthonormal rows make its norm sqrt(k).
  Eigen::VectorXd dir = q.colwise().sum().transpose();
  dir /= dir.norm();

  const double offset =
      rho * std::sqrt(1.0 - km1 * delta_hat * delta_hat) /
          std::sqrt(static_cast<double>(k)) -
      std::sqrt(km1) * delta_hat;

  const LinearFunctional fn{dir, offset};
  for (Eigen::Index i = 0; i < k; ++i) {
    if (fn(Y.row(i).transpose()) < 0.0) return fallback();
  }
  return SeparatorOutcome{fn, false};
}

LinearFunctional quotient_separator(const Eigen::MatrixXd& M_set,
                                    const Eigen::MatrixXd& Y) {
  const Eigen::Index k = Y.rows();
  const Eigen::Index n = Y.cols();
  if (k < 1) throw ConstraintError("quotient_separator: Y must be nonempty");
  if (k >= n) throw ConstraintError("quotient_separator: k < n required");
  if (M_set.rows() < 2)
    throw ConstraintError("quotient_separator: at least two background points");

  // Orthonormal basis of E = span{y_j - y_1}; rank-revealing so duplicate
  // error points collapse gracefully.
  Eigen::MatrixXd diffs(k - 1, n);
  for (Eigen::Index j = 1; j < k; ++j) diffs.row(j - 1) = Y.row(j) - Y.row(0);
  Eigen::MatrixXd basis;
  if (k > 1) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs.transpose(), Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double tol = std::max(diffs.rows(), diffs.cols()) *
                       std::numeric_limits<double>::epsilon() *
                       (sv.size() > 0 ? sv[0] : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > tol) ++rank;
    basis = svd.matrixU().leftCols(rank);
  }

  const auto project = [&basis](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    if (basis.cols() == 0) return x;
    return x - basis * (basis.transpose() * x);
  };

  // Projected mean of the background and the summed per-coordinate
  // variances R0^2 (basis-free: trace of the projected covariance).
  const Eigen::Index M = M_set.rows();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::VectorXd> proj(static_cast<std::size_t>(M));
  for (Eigen::Index i = 0; i < M; ++i) {
    proj[static_cast<std::size_t>(i)] = project(M_set.row(i).transpose());
    mean += proj[static_cast<std::size_t>(i)];
  }
  mean /= static_cast<double>(M);
  double r0_sq = 0.0;
  for (Eigen::Index i = 0; i < M; ++i)
    r0_sq += (proj[static_cast<std::size_t>(i)] - mean).squaredNorm();
  r0_sq /= static_cast<double>(M);
  const double r0 = std::sqrt(r0_sq);
  if (!(r0 > 0.0))
    throw NumericError("quotient_separator: zero projected variance");

  const Eigen::VectorXd rep = project(Y.row(0).transpose()) - mean;
  const double rep_norm = rep.norm();
  if (!(rep_norm > 0.0))
    throw NumericError("quotient_separator: degenerate direction");
  const Eigen::VectorXd u = rep / rep_norm;

  // l0(x) = <(Q(x) - Qbar)/R0, u> - 1/sqrt(2), rescaled by R0 > 0 into a
  // unit-direction functional with identical sign.
  const double offset = u.dot(mean) + r0 / std::sqrt(2.0);
  return LinearFunctional{u, offset};
}

bool separates(const LinearFunctional& fn, const Eigen::MatrixXd& M_set,
               const Eigen::MatrixXd& Y) {
  for (Eigen::Index i = 0; i < Y.rows(); ++i)
    if (fn(Y.row(i).transpose()) < 0.0) return false;
  for (Eigen::Index i = 0; i < M_set.rows(); ++i)
    if (fn(M_set.row(i).transpose()) >= 0.0) return false;
  return true;
}

}  // namespace ktu::mc
