#pragma once

// Independent reference computations used only by the tests. They avoid the
// library's adaptive machinery on purpose.

#include <cmath>
#include <functional>

namespace oracle {

/// Composite Simpson rule with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, long panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double acc = f(a) + f(b);
  for (long i = 1; i < panels; ++i) acc += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

/// Direct summation of Σ_{n<terms} (2 d(2^n t))^q / 2^n with a plain
/// remainder for d.
inline double takagi_T_direct(double q, double t, int terms = 60) {
  double acc = 0.0;
  for (int n = 0; n < terms; ++n) {
    const double s = std::ldexp(t, n);
    const double d = std::abs(s - std::round(s));
    acc += std::pow(2.0 * d, q) / std::ldexp(1.0, n);
  }
  return acc;
}

inline double takagi_S_direct(double q, double t, int terms = 60) {
  double acc = 0.0;
  for (int n = 0; n < terms; ++n) {
    const double s = std::ldexp(t, n);
    const double d = std::abs(s - std::round(s));
    acc += d / std::pow(2.0, n * q - 1.0);
  }
  return acc;
}

/// ∫_0^1 (2 d(2^n t))^q · 3t² dt in closed form: split [0,1] into the 2^n
/// unit cells of u = 2^n t and use the moments of (2d(v))^q on one cell.
inline double tent_power_moment_cubic_weight(double q, int n) {
  const double m0 = 1.0 / (q + 1.0);
  const double m1 = 0.5 * m0;
  const double m2 = 1.0 / (8.0 * (q + 3.0)) +
                    0.5 * (1.0 / (q + 1.0) - 1.0 / (q + 2.0) + 1.0 / (4.0 * (q + 3.0)));
  const double K = std::ldexp(1.0, n);
  const double cells = K * m2 + m1 * K * (K - 1.0) + m0 * (K - 1.0) * K * (2.0 * K - 1.0) / 6.0;
  return 3.0 * std::ldexp(cells, -3 * n);
}

/// ∫ T_q(t) 3t² dt and ∫ S_q(t) 3t² dt from the closed-form level moments.
inline double takagi_T_cubic_weight(double q, int terms = 80) {
  double acc = 0.0;
  for (int n = 0; n < terms; ++n) acc += std::ldexp(tent_power_moment_cubic_weight(q, n), -n);
  return acc;
}

inline double takagi_S_cubic_weight(double q, int terms = 80) {
  double acc = 0.0;
  for (int n = 0; n < terms; ++n) acc += std::exp2(-n * q) * tent_power_moment_cubic_weight(1.0, n);
  return acc;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// φ_n for φ ≡ 1: (-ln t)^{n-1} / (n-1)!.
inline double constant_phi_iterate(int n, double t) {
  return std::pow(-std::log(t), n - 1) / factorial(n - 1);
}

}  // namespace oracle
