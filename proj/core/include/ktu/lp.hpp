#ifndef KTU_LP_HPP
#define KTU_LP_HPP

#include <optional>

#include <Eigen/Core>

#include "ktu/linear_functional.hpp"

namespace ktu::mc {

enum class LpStatus { separable, not_separable, indeterminate };

struct LpResult {
  LpStatus status = LpStatus::indeterminate;
  std::optional<LinearFunctional> witness;  // present iff separable
  double margin = 0.0;  // best verified raw margin (box-normalized coefficients)
  int iterations = 0;   // total simplex pivots across subproblems
};

struct LpOptions {
  double margin_threshold = 1e-9;  // separable iff optimal margin exceeds this
  int max_iterations = 0;          // 0 = automatic cap
  int row_batch = 64;              // lazily added background rows per round
};

/// Exact separability oracle: maximizes the worst-case margin of an affine
/// functional with coefficients boxed to [-1, 1], l(y) >= margin on Y and
/// l(x) <= -margin on M. Background rows are generated lazily; a
/// subproblem optimum below the threshold certifies non-separability (the
/// subproblem is a relaxation), and a verified full-data margin above it
/// certifies separability. Hitting the iteration cap yields indeterminate.
LpResult lp_separability(const Eigen::MatrixXd& M_set, const Eigen::MatrixXd& Y,
                         const LpOptions& options = {});

}  // namespace ktu::mc

#endif
