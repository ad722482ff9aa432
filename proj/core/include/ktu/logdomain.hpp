#ifndef KTU_LOGDOMAIN_HPP
#define KTU_LOGDOMAIN_HPP

namespace ktu {

/// ln(1 - e^a) for a <= 0, computed without loss near either end.
/// Returns -inf when a >= 0 (the quantity 1 - e^a is then nonpositive).
double log1mexp(double a);

/// ln((1 - t)^p) = p * log1p(-t) for t in [0, 1).
double log_pow1m(double t, double p);

}  // namespace ktu

#endif
