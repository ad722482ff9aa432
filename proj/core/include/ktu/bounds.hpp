#ifndef KTU_BOUNDS_HPP
#define KTU_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace ktu::bounds {

/// Inputs of the uncorrelated k-tuple separation bound for the unit ball.
struct BallBoundQuery {
  int n = 2;                 // ambient dimension, >= 2
  std::int64_t M = 1;        // background sample count, >= 1
  int k = 1;                 // error sample count, >= 1
  int grid_resolution = 512; // cells per axis of the (eps, delta) search

  void validate() const;  // throws ConstraintError
};

/// A point of the (eps, delta) search domain.
struct FeasiblePoint {
  double eps = 0.0;
  double delta = 0.0;
};

struct BoundResult {
  double p_lower = 0.0;
  double log_p_lower = 0.0;
  double eps = 0.0;                 // witness
  std::optional<double> delta;      // absent for the correlated bound
  double delta_value = 0.0;         // the Delta term at the witness
  bool empty_feasible = false;
};

/// Inputs of the correlated-cluster bound.
struct CorrBoundQuery {
  int n = 2;
  std::int64_t M = 1;
  int k = 1;
  int m = 1;            // cluster cardinality, 1 <= m <= k
  double beta1 = 0.0;   // beta1 >= beta2
  double beta2 = 0.0;
  int grid_resolution = 512;

  void validate() const;
};

/// Inputs of the quotient-space (product distribution) bound.
struct QuotientBoundQuery {
  int n = 2;
  int k = 1;            // k < n
  double sigma0 = 0.0;  // per-coordinate standard-deviation lower bound
  double theta = 0.0;   // failure probability, in (0, 1)

  void validate() const;
};

/// True iff (eps, delta) satisfies all four feasibility constraints for
/// the ball bound at (n, k). The (k-1)(1-delta^2)^{n/2} <= 1 line is
/// evaluated in log domain. Total on eps, delta in (0, 1).
bool feasible_ball(double eps, double delta, int n, int k);

/// Delta(eps, delta, k); throws ConstraintError naming the violated line
/// for inputs outside the k-dependent feasibility region. Accepts the
/// closed corners eps = 0 and delta = 0 (analytic limits).
double delta_ball(double eps, double delta, int k);

/// Log of the three-factor product at a feasible point. Underflow-safe for
/// n up to 1e6 and M up to 1e12; returns -inf when any factor degenerates
/// to a nonpositive value.
double log_p1_ball(int n, std::int64_t M, int k, const FeasiblePoint& point);

/// Grid maximization of log_p1_ball over feasible (eps, delta). Grid nodes
/// are the interior lattice i/R, so doubling grid_resolution refines the
/// node set and the returned bound can only improve.
BoundResult p1_ball_lower(const BallBoundQuery& query);

/// Delta(eps, m) of the correlated bound; throws ConstraintError when
/// (1-eps)^2 + beta2(m-1) <= 0 or 1 + (m-1) beta1 <= 0. Negative values of
/// the closed form are clamped to 0 (conservative).
double delta_corr(double eps, int m, double beta1, double beta2);

/// Log of the correlated two-factor product at eps.
double log_p1_corr(int n, std::int64_t M, int k, int m, double beta1,
                   double beta2, double eps);

/// Grid maximization over eps only; witness is eps-only.
BoundResult p1_corr_lower(const CorrBoundQuery& query);

/// Largest admissible background count floor(theta/3 * exp((n-k+1)
/// sigma0^4 / 2)) - 1, computed in log domain; nullopt when below 1.
/// Saturates at int64 max for astronomically large bounds.
std::optional<std::int64_t> quotient_max_M(const QuotientBoundQuery& query);

/// Smallest failure probability admitted by the quotient bound for a given
/// M: 3(M+1) exp(-(n-k+1) sigma0^4 / 2), clamped to (0, 1].
double quotient_min_theta(int n, int k, double sigma0, std::int64_t M);

struct CurvePoint {
  int k = 0;
  BoundResult result;
};

/// One bound per k in [k_lo, k_hi]; deterministic for fixed grid.
std::vector<CurvePoint> bound_curve(const BallBoundQuery& base, int k_lo,
                                    int k_hi);

/// Correlated curve with m = k at every point (whole-sample cluster).
std::vector<CurvePoint> bound_curve(const CorrBoundQuery& base, int k_lo,
                                    int k_hi);

}  // namespace ktu::bounds

#endif
