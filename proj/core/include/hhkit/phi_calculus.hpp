#pragma once

#include <vector>

#include "hhkit/phi_function.hpp"
#include "hhkit/quadrature.hpp"

namespace hhkit {

/// (φ*ψ)(t) = ∫_t^1 φ(t/τ) ψ(τ) dτ/τ, returned as a lazy evaluator of index
/// p+q. With x = -ln t this is the Volterra convolution ∫_0^x Φ(x-v) Ψ(v) dv,
/// which is what gets integrated. Two closed-form log powers convolve exactly.
PhiFunction convolve(const PhiFunction& phi, const PhiFunction& psi,
                     const QuadratureSpec& spec = {});

/// φ_1 = φ, φ_{k+1} = φ * φ_k.
/// Closed-form log powers use φ_n = c^n Γ(p)^n / Γ(np) (-ln t)^{np-1}.
/// Anything else is tabulated eagerly: the bounded ratio φ_k(e^{-x}) / x^{kp-1}
/// is stored on Chebyshev panels in x covering [0, 710], one level at a time.
PhiFunction iterate_phi(const PhiFunction& phi, int n, const QuadratureSpec& spec = {});

/// φ_1, ..., φ_n from a single pass.
std::vector<PhiFunction> iterate_phi_sequence(const PhiFunction& phi, int n,
                                              const QuadratureSpec& spec = {});

/// Smallest integer n0 with n0·p >= 2.
int phi_n_offset(double p);

/// Upper bound for sup over [δ, 1) of |φ_{n+n0}|:
/// (-ln δ)^{n0 p - 1} Γ(p)^{n0} N^{n0} (Γ(p) (-ln δ)^p N)^n / Γ(np).
double phi_n_sup_bound(double p, double norm, int n, double delta);

/// x^n / Γ(np), evaluated through logarithms.
double gamma_ratio(double x, int n, double p);

/// ∫_0^1 g(s) φ_n(s) ds.
double smear(const ScalarFunction& g, const PhiFunction& phi, int n,
             const QuadratureSpec& spec = {});

}  // namespace hhkit
