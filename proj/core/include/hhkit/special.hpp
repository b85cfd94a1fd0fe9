#pragma once

#include <cmath>

namespace hhkit {

// glibc's lgamma writes the global `signgam`; lgamma_r keeps evaluation re-entrant.
inline double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

/// ln B(p, q) = ln Γ(p) + ln Γ(q) − ln Γ(p + q) for p, q > 0.
inline double log_beta(double p, double q) {
  return log_gamma(p) + log_gamma(q) - log_gamma(p + q);
}

inline double beta_function(double p, double q) { return std::exp(log_beta(p, q)); }

}  // namespace hhkit
