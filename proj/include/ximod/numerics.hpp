#pragma once

// Quadrature and series engines.
//
// All integrals are computed with an adaptive double-exponential (tanh-sinh)
// rule: levels are refined until two successive estimates agree to the
// configured tolerance, and an interval that refuses to converge is bisected.
// Semi-infinite integrals are truncated using the declared decay class, or
// mapped onto a finite interval for algebraic decay.

#include "ximod/real.hpp"

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace ximod {

struct PrecisionConfig {
    unsigned working_digits = 30;
    double target_abs_tol = 1e-25;
    double target_rel_tol = 1e-25;
    long max_evals = 4'000'000;

    /// Tolerances 10^(5-digits), the usual choice for a given precision.
    static PrecisionConfig with_digits(unsigned digits);

    PrecisionConfig with_tolerance(double abs_tol, double rel_tol) const;
    /// Both tolerances divided by 10^digits.
    PrecisionConfig tightened(int digits = 1) const;
    /// Throws ConfigError when an invariant is violated.
    void validate() const;
};

struct QuadratureResult {
    Complex value;
    Real error_estimate{0};
    long evals = 0;
    bool converged = false;
};

struct SeriesResult {
    Complex value;
    Real tail_estimate{0};
    long terms_used = 0;
};

using RealIntegrand = std::function<Complex(const Real&)>;

/// Integrand that additionally receives the exact distances x-a and b-x,
/// for integrands whose singular endpoint must be resolved to full relative
/// precision.
using EndpointIntegrand = std::function<Complex(const Real& x, const Real& from_a, const Real& from_b)>;

enum class DecayHint { gaussian, exponential, power };

QuadratureResult integrate_finite(const RealIntegrand& f, const Real& a, const Real& b,
                                  const PrecisionConfig& cfg);
QuadratureResult integrate_finite(const EndpointIntegrand& f, const Real& a, const Real& b,
                                  const PrecisionConfig& cfg);

/// ∫_a^∞ f.  For gaussian/exponential decay the truncation point is found by
/// sampling unless `truncation` is given; for power decay the tail beyond
/// a+1 is mapped to (0,1] through x = T/u.
QuadratureResult integrate_semi_infinite(const RealIntegrand& f, const Real& a, DecayHint decay,
                                         const PrecisionConfig& cfg,
                                         std::optional<Real> truncation = std::nullopt);

struct Axis {
    Real lower{0};
    std::optional<Real> upper;  // nullopt: semi-infinite
    DecayHint decay = DecayHint::exponential;
};

using PointIntegrand = std::function<Complex(std::span<const Real>)>;

/// Nested 1-D quadrature over 2 or 3 axes (first axis outermost).  Inner
/// tolerances are one digit tighter per nesting level.
QuadratureResult integrate_iterated(const PointIntegrand& f, const std::vector<Axis>& axes,
                                    const PrecisionConfig& cfg);

struct PowerTail {
    double exponent;     // terms ~ c m^{-exponent}
    long terms = 200;    // direct terms
};
struct GeometricTail {
    long max_terms = 100000;
};
struct CustomTail {
    long terms;
    /// Remainder Σ_{m>M} given M; returns value and uncertainty.
    std::function<std::pair<Complex, Real>(long)> remainder;
};

using TailModel = std::variant<PowerTail, GeometricTail, CustomTail>;

/// Σ_{m>=first} term(m) with an analytic remainder per the tail model.
SeriesResult sum_with_tail(const std::function<Complex(long)>& term, const TailModel& model,
                           const PrecisionConfig& cfg, long first = 1);

/// Σ_{m>M} m^{-p} (Euler–Maclaurin), p > 1, M >= 1.
Complex power_tail_sum(const Complex& p, long M);

/// (1/2πi)∫_{c-i∞}^{c+i∞} g(s) ds.  When `conjugate_symmetric` is set the
/// caller asserts g(conj s) = conj g(s) and the result is real.
QuadratureResult mellin_barnes_line(const std::function<Complex(const Complex&)>& g, const Real& c,
                                    const PrecisionConfig& cfg, bool conjugate_symmetric = false);

}  // namespace ximod
