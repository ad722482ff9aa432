#ifndef KTU_LINEAR_FUNCTIONAL_HPP
#define KTU_LINEAR_FUNCTIONAL_HPP

#include <Eigen/Core>

namespace ktu {

/// Affine decision functional l(x) = <direction, x> - offset with a
/// unit-norm direction. The universal separator/corrector primitive.
struct LinearFunctional {
  Eigen::VectorXd direction;
  double offset = 0.0;

  double operator()(const Eigen::VectorXd& x) const {
    return direction.dot(x) - offset;
  }

  Eigen::Index dim() const { return direction.size(); }

  /// Normalizes w to unit length and rescales the offset so that decisions
  /// (the sign of the functional) are preserved. Throws NumericError when
  /// w is (numerically) zero.
  static LinearFunctional from_unnormalized(const Eigen::VectorXd& w,
                                            double raw_offset);
};

}  // namespace ktu

#endif
