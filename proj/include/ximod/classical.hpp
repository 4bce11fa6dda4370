#pragma once

// Classical special functions at the current working precision.
//
// Every routine evaluates internally with guard digits and rounds its result
// to the working precision, so callers can chain them freely.

#include "ximod/real.hpp"

namespace ximod {

/// Γ(s); PoleError at non-positive integers.
Complex gamma_complex(const Complex& s);
/// 1/Γ(s), entire (zero at the poles of Γ).
Complex rgamma(const Complex& s);
/// Principal log Γ(s) for Re s > 0.
Complex log_gamma(const Complex& s);
/// ψ(a) = Γ'(a)/Γ(a); PoleError at non-positive integers.
Complex digamma(const Complex& a);

struct ErfPair {
    Complex erf;
    Complex erfi;
};
ErfPair erf_family(const Complex& w);
Complex erf(const Complex& w);
Complex erfi(const Complex& w);
/// erf(w)/w and erfi(w)/w, analytic at w = 0 (value 2/√π).
Complex erf_over_arg(const Complex& w);
Complex erfi_over_arg(const Complex& w);

/// Kummer's ₁F₁(a;c;x); DomainError when c is a non-positive integer.
Complex hyp1f1(const Complex& a, const Complex& c, const Complex& x);
/// d/dz ₁F₁(1 ± z/2; 3/2; x) at z = 0, i.e. ±½ Σ x^n H_n/(3/2)_n.
Complex hyp1f1_param_derivative(int sign, const Complex& x);
/// Gauss ₂F₁(a,b;c;x) off the cut [1, ∞).
Complex hyp2f1(const Complex& a, const Complex& b, const Complex& c, const Complex& x);

/// ζ(s), s ≠ 1.
Complex zeta_complex(const Complex& s);
/// (s-1)ζ(s), entire.
Complex zeta_times_pole(const Complex& s);
/// ζ(s,a) for a > 0, s ≠ 1.
Complex hurwitz_zeta(const Complex& s, const Real& a);

/// ξ(s) = ½ s(s-1) π^{-s/2} Γ(s/2) ζ(s).
Complex xi(const Complex& s);
/// Ξ(t) = ξ(½ + it).
Real Xi(const Real& t);

enum class BesselKind { J0, K };
Complex bessel_family(BesselKind kind, const Complex& nu, const Real& x);
Real bessel_j0(const Real& x);
Complex bessel_k(const Complex& nu, const Real& x);

/// σ_{-z}(n) = Σ_{d|n} d^{-z}.
Complex divisor_sigma(const Complex& z, long n);

/// H_n = ψ(n+1) + γ.
Real harmonic_number(long n);

}  // namespace ximod
