#pragma once

// Generalized Hurwitz zeta ζ_w(s,a), generalized digamma ψ_w(a), and the
// coefficient functions, kernels and Bessel-type transforms built on them.
//
// Every function here is even in w.  The w = 0 cases are evaluated through
// their limit formulas, never by small-w evaluation.

#include "ximod/numerics.hpp"
#include "ximod/real.hpp"

#include <optional>
#include <string>

namespace ximod {

/// ζ_w(s,a) for Re s > 1, a > 0.
Complex zeta_w_direct(const Complex& s, const Real& a, const Complex& w, const PrecisionConfig& cfg);

/// Residue of ζ_w at s = 1: e^{w²/4} ₁F₁(1;3/2;-w²/4)².
Complex zeta_w_residue(const Complex& w);
/// The same residue through (π/w²) e^{-w²/4} erfi²(w/2).
Complex zeta_w_residue_erfi(const Complex& w);

/// ψ_w(a), a > 0.
Complex psi_w_integral(const Real& a, const Complex& w, const PrecisionConfig& cfg);

struct LaurentData {
    Complex residue;
    Complex constant_term;  // -ψ_w(a+1)
};

/// ψ_w(a+1) extracted from the constant Laurent coefficient of ζ_w(s,a+1)
/// at s = 1 by extrapolation over s = 1 + h.
Complex psi_w_laurent(const Real& a, const Complex& w, const PrecisionConfig& cfg);
LaurentData zeta_w_laurent(const Real& a, const Complex& w, const PrecisionConfig& cfg);

Complex coefficient_C(const Complex& w);
Complex coefficient_B(const Complex& w);
/// A_w(z) = (√π/w) erf(w/2) ₁F₁(1+z/2;3/2;w²/4).
Complex coefficient_A(const Complex& z, const Complex& w);
/// A_w(z) through e^{-w²/4} ₁F₁(1;3/2;w²/4) ₁F₁(1+z/2;3/2;w²/4).
Complex coefficient_A_product(const Complex& z, const Complex& w);

/// λ_w(x) = ψ_w(x+1) - C(w)/(2x) - C(iw) log x - B(iw)/2.
Complex lambda_w(const Real& x, const Complex& w, const PrecisionConfig& cfg);

/// φ(z,x) = ζ(z+1,x) - x^{-z}/z - x^{-z-1}/2, -1 < Re z < 1, z ≠ 0.
Complex phi_classical(const Complex& z, const Real& x);
/// ψ(x) + 1/(2x) - log x, the z → 0 companion of φ(z,x) up to sign.
Real phi_digamma(const Real& x);
/// φ_w(z,x) = ζ_w(z+1,x+1) + ½A_w(z)x^{-z-1} - A_{iw}(-z)x^{-z}/z, 0 < Re z < 1.
Complex phi_w(const Complex& z, const Real& x, const Complex& w, const PrecisionConfig& cfg);

struct AsymptoticValue {
    Complex value;
    std::optional<std::string> warning;
};
/// Two-term large-a expansion of ζ_w(s,a+1), -1 < Re s < 2, s ≠ 1.
AsymptoticValue zeta_w_asymptotic(const Complex& s, const Real& a, const Complex& w);

Complex kernel_omega(const Real& x, const Complex& z, const Complex& w, const Complex& s);
Complex kernel_delta2(const Real& x, const Complex& z, const Complex& w, const Complex& s);
Complex kernel_rho(const Real& x, const Complex& w, const Complex& s);
Complex kernel_nabla(const Real& x, const Complex& w, const Complex& s);

/// ₁K_{z,w}(x) by its Mellin–Barnes integral on Re s = c (default
/// max(0, Re z) + 1/2).
Complex k1_bessel(const Complex& z, const Complex& w, const Real& x, const PrecisionConfig& cfg,
                  std::optional<Real> abscissa = std::nullopt);
/// ₁K_{z,w}(x) by the residue series obtained from closing the contour to the
/// left; requires 2z not an integer.
Complex k1_bessel_series(const Complex& z, const Complex& w, const Real& x);

/// (γ - log 2πα)/(2α) C(w) + B(w)/(2α).
Complex l1_limit(const Complex& w, const Real& alpha);
/// ζ(z+1)A_w(z)/(2α^{z+1}) + ζ(z)A_w(-z)/(αz), whose z → 0 limit is l1_limit.
Complex l1_bracket(const Complex& z, const Complex& w, const Real& alpha);
/// C(iw) log(mα) + B(iw)/2.
Complex l2_limit(const Complex& w, const Real& alpha, long m);

namespace detail {
/// ∫₀^∞ e^{-x}(1/x - J₀(bx)/(1-e^{-x})) dx = -γ + Σ_k (1/k - 1/√(k²+b²)).
Real psi_kernel(const Real& b);
/// Σ_{n≥1} (n² + b²)^{-s/2}.
Complex lattice_zeta(const Complex& s, const Real& b);
}  // namespace detail

}  // namespace ximod
