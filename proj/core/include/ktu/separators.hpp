#ifndef KTU_SEPARATORS_HPP
#define KTU_SEPARATORS_HPP

#include <optional>

#include <Eigen/Core>

#include "ktu/linear_functional.hpp"

namespace ktu::mc {

enum class OffsetMode { algorithmic, theorem };

/// Parameters of the theorem-mode offset; any field left empty is
/// estimated from the sample (an estimator, not the theorem's quantities).
struct TheoremParams {
  std::optional<double> eps;
  std::optional<double> beta1;
  std::optional<double> beta2;
};

/// Mean-direction functional: direction ybar/||ybar||. Algorithmic mode
/// sets the offset to the minimum projection over Y (so l(y) >= 0 on all
/// of Y by construction); theorem mode uses the correlated-bound offset.
LinearFunctional mean_separator(const Eigen::MatrixXd& Y, OffsetMode mode,
                                const TheoremParams& params = {});

struct SeparatorOutcome {
  LinearFunctional fn;
  bool fallback = false;  // mean_separator(algorithmic) was substituted
};

/// Averaged near-orthogonal-frame functional built from Y alone:
/// rescales points to the common sphere, orthogonalizes them in sample
/// order, and offsets by the simplex height. Falls back to the
/// algorithmic mean separator (flagged) when the estimated (eps, delta)
/// are infeasible, the orthogonalization breaks down, or the built
/// functional fails membership on Y.
SeparatorOutcome thm1_separator(const Eigen::MatrixXd& Y);

/// Quotient-space functional: projects out span{y_j - y_1}, centers and
/// scales by the background sample, and thresholds the cosine at
/// 1/sqrt(2). Returned in original coordinates (projection composed in).
LinearFunctional quotient_separator(const Eigen::MatrixXd& M_set,
                                    const Eigen::MatrixXd& Y);

/// True iff l(y) >= 0 for all rows of Y and l(x) < 0 for all rows of M.
bool separates(const LinearFunctional& fn, const Eigen::MatrixXd& M_set,
               const Eigen::MatrixXd& Y);

}  // namespace ktu::mc

#endif
