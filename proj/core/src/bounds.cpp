#include "ktu/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ktu/errors.hpp"
#include "ktu/logdomain.hpp"

namespace ktu::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

// k * ln(1 - (1-eps)^n)
double term_first(int n, int k, double eps) {
  return static_cast<double>(k) * log1mexp(static_cast<double>(n) * std::log1p(-eps));
}

// sum_{m=1}^{k-1} ln(1 - m (1-delta^2)^{n/2}); -inf when a factor <= 0.
double term_mid(int n, int k, double delta) {
  if (k <= 1) return 0.0;
  const double l = 0.5 * static_cast<double>(n) * std::log1p(-delta * delta);
  double sum = 0.0;
  for (int m = 1; m < k; ++m) {
    const double a = std::log(static_cast<double>(m)) + l;
    if (a >= 0.0) return -kInf;
    sum += log1mexp(a);
  }
  return sum;
}

// M * ln(1 - Delta^{n/2} / 2); Delta outside [0, 1] handled per the
// clamping policy (below 0 -> factor 1, above 1 -> -inf).
double term_last(int n, std::int64_t M, double delta_value) {
  if (delta_value <= 0.0) return 0.0;
  if (delta_value > 1.0) return -kInf;
  const double s = 0.5 * static_cast<double>(n) * std::log(delta_value) - kLn2;
  if (s >= 0.0) return -kInf;
  return static_cast<double>(M) * log1mexp(s);
}

double ball_bracket(double eps, double delta, int k) {
  const double km1 = static_cast<double>(k - 1);
  return (1.0 - eps) * std::sqrt(1.0 - km1 * delta * delta) /
             std::sqrt(static_cast<double>(k)) -
         std::sqrt(km1) * delta;
}

double clamp01(double x) { return std::min(std::max(x, 0.0), 1.0); }

}  // namespace

void BallBoundQuery::validate() const {
  if (n < 2) throw ConstraintError("ball bound: n >= 2 required");
  if (M < 1) throw ConstraintError("ball bound: M >= 1 required");
  if (k < 1) throw ConstraintError("ball bound: k >= 1 required");
  if (grid_resolution < 2)
    throw ConstraintError("ball bound: grid_resolution >= 2 required");
}

void CorrBoundQuery::validate() const {
  if (n < 2) throw ConstraintError("corr bound: n >= 2 required");
  if (M < 1) throw ConstraintError("corr bound: M >= 1 required");
  if (k < 1) throw ConstraintError("corr bound: k >= 1 required");
  if (m < 1 || m > k) throw ConstraintError("corr bound: 1 <= m <= k required");
  if (beta1 < beta2) throw ConstraintError("corr bound: beta1 >= beta2 required");
  if (1.0 + (m - 1) * beta1 <= 0.0)
    throw ConstraintError("corr bound: 1 + (m-1) beta1 > 0 violated");
  if (1.0 + beta2 * (m - 1) <= 0.0)
    throw ConstraintError(
        "corr bound: (1-eps)^2 + beta2 (m-1) > 0 has no solution in eps");
  if (grid_resolution < 2)
    throw ConstraintError("corr bound: grid_resolution >= 2 required");
}

void QuotientBoundQuery::validate() const {
  if (k < 1) throw ConstraintError("quotient bound: k >= 1 required");
  if (k >= n) throw ConstraintError("quotient bound: k < n required");
  if (!(sigma0 > 0.0)) throw ConstraintError("quotient bound: sigma0 > 0 required");
  if (!(theta > 0.0 && theta < 1.0))
    throw ConstraintError("quotient bound: theta in (0,1) required");
}

bool feasible_ball(double eps, double delta, int n, int k) {
  if (!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0)) return false;
  if (k <= 1) return true;  // every delta constraint is vacuous
  const double km1 = static_cast<double>(k - 1);
  if (1.0 - km1 * delta * delta < 0.0) return false;
  // (k-1)(1-delta^2)^{n/2} <= 1, in log domain
  if (std::log(km1) + 0.5 * static_cast<double>(n) * std::log1p(-delta * delta) > 0.0)
    return false;
  return ball_bracket(eps, delta, k) >= 0.0;
}

double delta_ball(double eps, double delta, int k) {
  if (k < 1) throw ConstraintError("delta_ball: k >= 1 required");
  if (!(eps >= 0.0 && eps < 1.0) || !(delta >= 0.0 && delta < 1.0))
    throw ConstraintError("delta_ball: eps, delta in [0,1) required");
  const double km1 = static_cast<double>(k - 1);
  if (1.0 - km1 * delta * delta < 0.0)
    throw ConstraintError("delta_ball: constraint 1-(k-1) delta^2 >= 0 violated");
  const double br = ball_bracket(eps, delta, k);
  if (br < 0.0)
    throw ConstraintError(
        "delta_ball: constraint (1-eps) sqrt(1-(k-1) delta^2)/sqrt(k) - "
        "sqrt(k-1) delta >= 0 violated");
  return clamp01(1.0 - br * br);
}

double log_p1_ball(int n, std::int64_t M, int k, const FeasiblePoint& point) {
  const double mid = term_mid(n, k, point.delta);
  if (mid == -kInf) return -kInf;
  const double br = ball_bracket(point.eps, point.delta, k);
  const double dv = clamp01(1.0 - br * br);
  const double last = term_last(n, M, dv);
  if (last == -kInf) return -kInf;
  return term_first(n, k, point.eps) + mid + last;
}

BoundResult p1_ball_lower(const BallBoundQuery& query) {
  query.validate();
  const int R = query.grid_resolution;
  const int n = query.n;
  const int k = query.k;
  const double km1 = static_cast<double>(k - 1);
  const double sqrt_k = std::sqrt(static_cast<double>(k));
  const double sqrt_km1 = std::sqrt(km1);

  std::vector<double> first(static_cast<std::size_t>(R));
  for (int i = 1; i < R; ++i)
    first[static_cast<std::size_t>(i)] = term_first(n, k, static_cast<double>(i) / R);

  double best = -kInf;
  double best_eps = 0.0, best_delta = 0.0, best_dv = 0.0;
  bool found = false;

  for (int j = 1; j < R; ++j) {
    const double delta = static_cast<double>(j) / R;
    const double under_root = 1.0 - km1 * delta * delta;
    if (under_root < 0.0) break;  // only gets worse as delta grows
    if (k > 1 &&
        std::log(km1) + 0.5 * static_cast<double>(n) * std::log1p(-delta * delta) > 0.0)
      continue;  // constraint 3 holds from some delta onward
    const double mid = term_mid(n, k, delta);
    if (mid == -kInf) continue;
    const double root = std::sqrt(under_root) / sqrt_k;
    const double shift = sqrt_km1 * delta;
    for (int i = 1; i < R; ++i) {
      const double eps = static_cast<double>(i) / R;
      const double br = (1.0 - eps) * root - shift;
      if (br < 0.0) break;  // bracket decreases with eps
      const double dv = clamp01(1.0 - br * br);
      const double last = term_last(n, query.M, dv);
      if (last == -kInf) continue;
      const double total = first[static_cast<std::size_t>(i)] + mid + last;
      if (total > best) {
        best = total;
        best_eps = eps;
        best_delta = delta;
        best_dv = dv;
        found = true;
      }
    }
  }

  BoundResult out;
  if (!found) {
    out.p_lower = 0.0;
    out.log_p_lower = -kInf;
    out.empty_feasible = true;
    return out;
  }
  out.log_p_lower = best;
  out.p_lower = std::exp(best);
  out.eps = best_eps;
  out.delta = best_delta;
  out.delta_value = best_dv;
  return out;
}

double delta_corr(double eps, int m, double beta1, double beta2) {
  if (m < 1) throw ConstraintError("delta_corr: m >= 1 required");
  const double mm1 = static_cast<double>(m - 1);
  const double num = (1.0 - eps) * (1.0 - eps) + beta2 * mm1;
  if (!(num > 0.0))
    throw ConstraintError("delta_corr: constraint (1-eps)^2 + beta2 (m-1) > 0 violated");
  const double den = 1.0 + mm1 * beta1;
  if (!(den > 0.0))
    throw ConstraintError("delta_corr: constraint 1 + (m-1) beta1 > 0 violated");
  const double ratio = num / std::sqrt(den);
  const double dv = 1.0 - ratio * ratio / static_cast<double>(m);
  return clamp01(dv);
}

double log_p1_corr(int n, std::int64_t M, int k, int m, double beta1,
                   double beta2, double eps) {
  const double dv = delta_corr(eps, m, beta1, beta2);
  const double last = term_last(n, M, dv);
  if (last == -kInf) return -kInf;
  return term_first(n, k, eps) + last;
}

BoundResult p1_corr_lower(const CorrBoundQuery& query) {
  query.validate();
  const int R = query.grid_resolution;
  const double mm1 = static_cast<double>(query.m - 1);

  double best = -kInf;
  double best_eps = 0.0, best_dv = 0.0;
  bool found = false;
  for (int i = 1; i < R; ++i) {
    const double eps = static_cast<double>(i) / R;
    const double num = (1.0 - eps) * (1.0 - eps) + query.beta2 * mm1;
    if (!(num > 0.0)) continue;
    const double den = 1.0 + mm1 * query.beta1;
    const double ratio = num / std::sqrt(den);
    const double dv = clamp01(1.0 - ratio * ratio / static_cast<double>(query.m));
    const double last = term_last(query.n, query.M, dv);
    if (last == -kInf) continue;
    const double total = term_first(query.n, query.k, eps) + last;
    if (total > best) {
      best = total;
      best_eps = eps;
      best_dv = dv;
      found = true;
    }
  }

  BoundResult out;
  if (!found) {
    out.p_lower = 0.0;
    out.log_p_lower = -kInf;
    out.empty_feasible = true;
    return out;
  }
  out.log_p_lower = best;
  out.p_lower = std::exp(best);
  out.eps = best_eps;
  out.delta_value = best_dv;
  return out;
}

std::optional<std::int64_t> quotient_max_M(const QuotientBoundQuery& query) {
  query.validate();
  const double s2 = query.sigma0 * query.sigma0;
  const double exponent = 0.5 * static_cast<double>(query.n - query.k + 1) * s2 * s2;
  const double log_x = std::log(query.theta / 3.0) + exponent;
  // floor(x) - 1 saturated at int64 max once x exceeds the representable range
  if (log_x >= 43.0)  // x > 4.7e18
    return std::numeric_limits<std::int64_t>::max();
  const double x = std::exp(log_x);
  const double v = std::floor(x) - 1.0;
  if (v < 1.0) return std::nullopt;
  return static_cast<std::int64_t>(v);
}

double quotient_min_theta(int n, int k, double sigma0, std::int64_t M) {
  if (k >= n) throw ConstraintError("quotient bound: k < n required");
  if (!(sigma0 > 0.0)) throw ConstraintError("quotient bound: sigma0 > 0 required");
  if (M < 0) throw ConstraintError("quotient bound: M >= 0 required");
  const double s2 = sigma0 * sigma0;
  const double exponent = 0.5 * static_cast<double>(n - k + 1) * s2 * s2;
  const double t = 3.0 * (static_cast<double>(M) + 1.0) * std::exp(-exponent);
  if (t >= 1.0) return 1.0;
  if (t <= 0.0) return std::numeric_limits<double>::denorm_min();
  return t;
}

std::vector<CurvePoint> bound_curve(const BallBoundQuery& base, int k_lo, int k_hi) {
  if (k_lo > k_hi || k_lo < 1) throw ConstraintError("bound_curve: bad k range");
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
  for (int k = k_lo; k <= k_hi; ++k) {
    BallBoundQuery q = base;
    q.k = k;
    out.push_back({k, p1_ball_lower(q)});
  }
  return out;
}

std::vector<CurvePoint> bound_curve(const CorrBoundQuery& base, int k_lo, int k_hi) {
  if (k_lo > k_hi || k_lo < 1) throw ConstraintError("bound_curve: bad k range");
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
  for (int k = k_lo; k <= k_hi; ++k) {
    CorrBoundQuery q = base;
    q.k = k;
    q.m = k;
    CurvePoint pt;
    pt.k = k;
    try {
      q.validate();
      pt.result = p1_corr_lower(q);
    } catch (const ConstraintError&) {
      pt.result.p_lower = 0.0;
      pt.result.log_p_lower = -kInf;
      pt.result.empty_feasible = true;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace ktu::bounds
