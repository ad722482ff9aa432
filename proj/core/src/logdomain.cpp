#include "ktu/logdomain.hpp"

#include <cmath>
#include <limits>

namespace ktu {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

double log1mexp(double a) {
  if (a >= 0.0) return -std::numeric_limits<double>::infinity();
  // Branch point at -ln 2 keeps both expm1 and log1p in their accurate range.
  return (a > -kLn2) ? std::log(-std::expm1(a)) : std::log1p(-std::exp(a));
}

double log_pow1m(double t, double p) { return p * std::log1p(-t); }

}  // namespace ktu
