#include "ktu/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "ktu/errors.hpp"

namespace ktu::mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;

// Dense tableau simplex for
//   max t  s.t.  a_r^T (w, c, t) >= 0,  w in [-1,1]^n, c in [-1,1]
// with w and c split into nonnegative parts so the all-zeros point (with t
// at its lower bound) is a valid nonbasic starting position. Variables:
// [w+ (n), w- (n), c+, c-, t, surplus (m)].
class MarginSimplex {
 public:
  // rows: coefficient of (w, c); sign convention folds the +-t term in.
  // row for y in Y:  <w, y> - c - t >= 0
  // row for x in M: -<w, x> + c - t >= 0
  struct Row {
    Eigen::VectorXd w_coeff;
    double c_coeff = 0.0;
  };

  MarginSimplex(int n, double t_upper)
      : n_(n), t_lower_(-1.0), t_upper_(t_upper) {}

  void add_row(const Row& row) { rows_.push_back(row); }
  int row_count() const { return static_cast<int>(rows_.size()); }

  enum class SolveStatus { optimal, iteration_cap };

  SolveStatus solve(int max_pivots, int& pivots_used) {
    build();
    const int cols = total_cols_;
    int stall = 0;
    double last_obj = -kInf;
    bool bland = false;
    int pivots = 0;
    while (true) {
      if (pivots >= max_pivots) {
        pivots_used = pivots;
        return SolveStatus::iteration_cap;
      }
      // entering column
      int enter = -1;
      double best_score = bland ? 0.0 : kCostTol;
      int enter_dir = 0;
      for (int j = 0; j < cols; ++j) {
        if (status_[j] == VarStatus::basic) continue;
        const double d = -obj_row_[j];  // reduced cost c_j - z_j
        if (status_[j] == VarStatus::at_lower && d > kCostTol) {
          if (bland) { enter = j; enter_dir = +1; break; }
          if (d > best_score) { best_score = d; enter = j; enter_dir = +1; }
        } else if (status_[j] == VarStatus::at_upper && d < -kCostTol) {
          if (bland) { enter = j; enter_dir = -1; break; }
          if (-d > best_score) { best_score = -d; enter = j; enter_dir = -1; }
        }
      }
      if (enter < 0) {
        pivots_used = pivots;
        return SolveStatus::optimal;
      }

      // ratio test
      const int m = row_count();
      double theta = upper_[enter] - lower_[enter];  // bound flip distance
      int leave = -1;
      int leave_bound = 0;  // -1 lower, +1 upper
      for (int i = 0; i < m; ++i) {
        const double a = enter_dir * tab_(i, enter);
        if (a > kPivotTol) {
          const double room = beta_[i] - lower_[basis_[i]];
          const double t = room / a;
          if (t < theta - 1e-15 || (t < theta + 1e-15 && leave >= 0 &&
                                    basis_[i] < basis_[leave])) {
            theta = t; leave = i; leave_bound = -1;
          }
        } else if (a < -kPivotTol && upper_[basis_[i]] < kInf) {
          const double room = upper_[basis_[i]] - beta_[i];
          const double t = room / (-a);
          if (t < theta - 1e-15 || (t < theta + 1e-15 && leave >= 0 &&
                                    basis_[i] < basis_[leave])) {
            theta = t; leave = i; leave_bound = +1;
          }
        }
      }
      if (theta >= kInf) {
        // cannot happen with a bounded objective; treat as a cap
        pivots_used = pivots;
        return SolveStatus::iteration_cap;
      }
      theta = std::max(theta, 0.0);

      if (leave < 0) {
        // bound flip of the entering variable
        for (int i = 0; i < m; ++i) beta_[i] -= enter_dir * theta * tab_(i, enter);
        value_[enter] += enter_dir * theta;
        status_[enter] = (enter_dir > 0) ? VarStatus::at_upper : VarStatus::at_lower;
      } else {
        pivot(enter, enter_dir, leave, leave_bound, theta);
        ++pivots;
      }

      const double obj = objective();
      if (obj > last_obj + 1e-13) {
        last_obj = obj;
        stall = 0;
        bland = false;
      } else if (++stall > 64) {
        bland = true;  // anti-cycling
      }
    }
  }

  double margin() const { return value_t(); }

  Eigen::VectorXd weights() const {
    Eigen::VectorXd w(n_);
    for (int i = 0; i < n_; ++i) w[i] = current(i) - current(n_ + i);
    return w;
  }

  double offset() const { return current(2 * n_) - current(2 * n_ + 1); }

 private:
  enum class VarStatus { at_lower, at_upper, basic };

  void build() {
    const int m = row_count();
    structural_ = 2 * n_ + 3;
    total_cols_ = structural_ + m;
    tab_.setZero(m, total_cols_);
    lower_.assign(static_cast<std::size_t>(total_cols_), 0.0);
    upper_.assign(static_cast<std::size_t>(total_cols_), 1.0);
    value_.assign(static_cast<std::size_t>(total_cols_), 0.0);
    status_.assign(static_cast<std::size_t>(total_cols_), VarStatus::at_lower);
    basis_.assign(static_cast<std::size_t>(m), 0);
    beta_.assign(static_cast<std::size_t>(m), 0.0);
    obj_row_.assign(static_cast<std::size_t>(total_cols_), 0.0);

    const int t_col = 2 * n_ + 2;
    lower_[t_col] = t_lower_;
    upper_[t_col] = t_upper_;
    value_[t_col] = t_lower_;
    for (int j = structural_; j < total_cols_; ++j) upper_[j] = kInf;

    // equality rows: a_r^T x - s_r = 0; start basis = surplus columns.
    for (int i = 0; i < m; ++i) {
      const Row& r = rows_[static_cast<std::size_t>(i)];
      for (int v = 0; v < n_; ++v) {
        tab_(i, v) = r.w_coeff[v];
        tab_(i, n_ + v) = -r.w_coeff[v];
      }
      tab_(i, 2 * n_) = r.c_coeff;
      tab_(i, 2 * n_ + 1) = -r.c_coeff;
      tab_(i, t_col) = -1.0;
      tab_(i, structural_ + i) = -1.0;
      basis_[i] = structural_ + i;
      status_[static_cast<std::size_t>(structural_ + i)] = VarStatus::basic;
      // s_r = a_r^T x0 with x0 = (0, 0, t_lower): every row carries -t.
      beta_[i] = -t_lower_;
      // normalize basis column to +1: multiply row by -1
      tab_.row(i) = -tab_.row(i);
    }
    // objective row z_j - c_j with c = e_t and c_B = 0 initially
    obj_row_[t_col] = -1.0;
  }

  void pivot(int enter, int enter_dir, int leave, int leave_bound, double theta) {
    const int m = row_count();
    const int out_col = basis_[leave];
    const double piv = tab_(leave, enter);

    // new value of the entering variable
    const double enter_val = value_[enter] + enter_dir * theta;
    // update basic values for all rows except the leaving one
    for (int i = 0; i < m; ++i)
      if (i != leave) beta_[i] -= enter_dir * theta * tab_(i, enter);

    tab_.row(leave) /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = tab_(i, enter);
      if (f != 0.0) tab_.row(i) -= f * tab_.row(leave);
    }
    {
      const double f = obj_row_[enter];
      if (f != 0.0) {
        for (int j = 0; j < total_cols_; ++j)
          obj_row_[j] -= f * tab_(leave, j);
      }
    }

    status_[out_col] = (leave_bound < 0) ? VarStatus::at_lower : VarStatus::at_upper;
    value_[out_col] = (leave_bound < 0) ? lower_[out_col] : upper_[out_col];
    basis_[leave] = enter;
    status_[enter] = VarStatus::basic;
    beta_[leave] = enter_val;
  }

  double current(int col) const {
    if (status_[col] == VarStatus::basic) {
      for (int i = 0; i < row_count(); ++i)
        if (basis_[i] == col) return beta_[i];
    }
    return value_[col];
  }

  double value_t() const { return current(2 * n_ + 2); }
  double objective() const { return value_t(); }

  int n_;
  double t_lower_;
  double t_upper_;
  std::vector<Row> rows_;
  int structural_ = 0;
  int total_cols_ = 0;
  Eigen::MatrixXd tab_;
  std::vector<double> lower_, upper_, value_, obj_row_, beta_;
  std::vector<int> basis_;
  std::vector<VarStatus> status_;
};

double row_value(const Eigen::VectorXd& w, double c, bool is_error,
                 const Eigen::VectorXd& x) {
  const double l = w.dot(x) - c;
  return is_error ? l : -l;
}

}  // namespace

LpResult lp_separability(const Eigen::MatrixXd& M_set, const Eigen::MatrixXd& Y,
                         const LpOptions& options) {
  const Eigen::Index kM = M_set.rows();
  const Eigen::Index kY = Y.rows();
  if (kM == 0 && kY == 0)
    throw ConstraintError("lp_separability: both sets empty");
  const Eigen::Index n = (kY > 0) ? Y.cols() : M_set.cols();
  if (kM > 0 && kY > 0 && M_set.cols() != Y.cols())
    throw ConstraintError("lp_separability: dimension mismatch");

  LpResult out;

  // One-sided instances have closed-form witnesses.
  if (kY == 0) {
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(n);
    dir[0] = 1.0;
    const double offset = (M_set * dir).maxCoeff() + 1.0;
    out.status = LpStatus::separable;
    out.witness = LinearFunctional{dir, offset};
    out.margin = 1.0;
    return out;
  }
  if (kM == 0) {
    const Eigen::VectorXd mean = Y.colwise().mean();
    Eigen::VectorXd dir;
    if (mean.norm() > 0.0) {
      dir = mean / mean.norm();
    } else {
      dir = Eigen::VectorXd::Zero(n);
      dir[0] = 1.0;
    }
    out.status = LpStatus::separable;
    out.witness = LinearFunctional{dir, (Y * dir).minCoeff()};
    out.margin = 1.0;
    return out;
  }

  // Margin upper bound: |<w,x> - c| <= ||x||_1 + 1 on the box, so the
  // t variable can be safely capped just above it.
  double t_upper = 2.0;
  for (Eigen::Index i = 0; i < kY; ++i)
    t_upper = std::max(t_upper, Y.row(i).lpNorm<1>() + 2.0);

  MarginSimplex simplex(static_cast<int>(n), t_upper);
  for (Eigen::Index i = 0; i < kY; ++i) {
    MarginSimplex::Row r;
    r.w_coeff = Y.row(i).transpose();
    r.c_coeff = -1.0;
    simplex.add_row(r);
  }

  std::vector<char> in_working(static_cast<std::size_t>(kM), 0);
  const auto add_background_row = [&](Eigen::Index i) {
    MarginSimplex::Row r;
    r.w_coeff = -M_set.row(i).transpose();
    r.c_coeff = 1.0;
    simplex.add_row(r);
    in_working[static_cast<std::size_t>(i)] = 1;
  };

  // Seed the working set with the background points most exposed along the
  // initial mean-difference direction; those are the likely active rows.
  {
    Eigen::VectorXd dir0 = Y.colwise().mean().transpose() -
                           M_set.colwise().mean().transpose();
    if (dir0.norm() == 0.0) dir0 = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd score = M_set * dir0;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(kM));
    std::iota(order.begin(), order.end(), 0);
    const std::size_t first =
        std::min<std::size_t>(static_cast<std::size_t>(options.row_batch),
                              order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<long>(first),
                      order.end(), [&score](Eigen::Index a, Eigen::Index b) {
                        if (score[a] != score[b]) return score[a] > score[b];
                        return a < b;
                      });
    for (std::size_t j = 0; j < first; ++j) add_background_row(order[j]);
  }

  const int pivot_cap = (options.max_iterations > 0)
                            ? options.max_iterations
                            : 200 * (static_cast<int>(n) + 8) + 2000;
  const int outer_cap = 200;

  for (int round = 0; round < outer_cap; ++round) {
    int used = 0;
    const auto st = simplex.solve(pivot_cap - out.iterations, used);
    out.iterations += used;
    if (st == MarginSimplex::SolveStatus::iteration_cap) {
      out.status = LpStatus::indeterminate;
      return out;
    }
    const double t_sub = simplex.margin();
    if (t_sub <= options.margin_threshold) {
      // The working set is a relaxation; its optimum bounds the full one.
      out.status = LpStatus::not_separable;
      out.margin = t_sub;
      return out;
    }
    const Eigen::VectorXd w = simplex.weights();
    const double c = simplex.offset();

    // True margin over the full data decides separability regardless of
    // how tight the working set is.
    double t_true = kInf;
    for (Eigen::Index i = 0; i < kY; ++i)
      t_true = std::min(t_true, row_value(w, c, true, Y.row(i).transpose()));
    for (Eigen::Index i = 0; i < kM; ++i)
      t_true = std::min(t_true, row_value(w, c, false, M_set.row(i).transpose()));
    if (t_true > options.margin_threshold) {
      out.status = LpStatus::separable;
      out.margin = t_true;
      out.witness = LinearFunctional::from_unnormalized(w, c);
      return out;
    }

    // Grow the working set with the most violated background rows.
    std::vector<std::pair<double, Eigen::Index>> violated;
    for (Eigen::Index i = 0; i < kM; ++i) {
      if (in_working[static_cast<std::size_t>(i)]) continue;
      const double v = row_value(w, c, false, M_set.row(i).transpose());
      if (v < t_sub - 1e-12) violated.push_back({v, i});
    }
    if (violated.empty()) {
      // Optimal for the full problem yet margin below threshold.
      out.status = LpStatus::not_separable;
      out.margin = t_true;
      return out;
    }
    std::sort(violated.begin(), violated.end());
    const std::size_t take =
        std::min<std::size_t>(static_cast<std::size_t>(options.row_batch),
                              violated.size());
    for (std::size_t j = 0; j < take; ++j) add_background_row(violated[j].second);
  }

  out.status = LpStatus::indeterminate;
  return out;
}

}  // namespace ktu::mc
