#pragma once

// Numerical verification of the Ξ-function modular relations and of the
// large-α expansion of the generalized Ξ-integral.
//
// Each verifier evaluates every side of its relation independently (series
// sides by direct summation with an analytic remainder, integral sides by
// quadrature over t) and reports the pairwise residuals.

#include "ximod/numerics.hpp"
#include "ximod/real.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ximod {

enum class IdentityName {
    jacobi_theta,
    hardy_theta,
    generalized_theta,
    ramanujan_1915,
    ramanujan_lost,
    hurwitz_modular,
    generalized_ramanujan,
    full_modular,
    bessel_sum,
};

struct IdentityInfo {
    IdentityName name;
    std::string id;           // e.g. "hardy-theta"
    std::string summary;      // one-line description of the relation
    std::string parameters;   // accepted parameters
    double default_tolerance;
};

const std::vector<IdentityInfo>& identity_registry();
const IdentityInfo& identity_info(IdentityName name);
/// Throws DomainError listing the valid ids.
IdentityName parse_identity_name(const std::string& id);

struct IdentityCase {
    IdentityName name = IdentityName::hardy_theta;
    Real alpha{1};
    Complex w{0};
    Complex z{0};
    Real n{0};                        // cosine frequency of the Ramanujan 1915 integral
    std::optional<double> tolerance;  // defaults to the registry value
    long series_terms = 200;          // direct terms M of the m-indexed series
    PrecisionConfig cfg{};
};

struct Side {
    std::string label;
    Complex value;
};

struct Residual {
    std::string first;
    std::string second;
    Real value{0};
};

struct ResidualReport {
    std::string identity;
    std::map<std::string, std::string> params;
    std::vector<Side> sides;
    std::vector<Residual> residuals;  // pairwise |a - b|
    Real rel_residual{0};             // max pairwise |a - b| / max(|a|, |b|)
    double tolerance = 0;
    bool pass = false;
    /// Series truncation and quadrature diagnostics, plus notes.
    std::map<std::string, std::string> diagnostics;
    unsigned digits = 30;  // significant digits used when rendering
};

/// Throws DomainError when a parameter violates the relation's hypotheses;
/// truncation or quadrature failures are recorded in the diagnostics and
/// force pass = false.
ResidualReport verify_identity(const IdentityCase& c);

struct AsymptoticScanReport {
    Complex z;
    Complex w;
    long m = 1;
    std::vector<Real> alpha_grid;
    std::vector<Complex> integral_values;
    std::vector<Complex> expansion_values;
    std::vector<Real> defects;
    double fitted_slope = 0;
    double predicted_slope = 0;  // -Re z/2 - 2m
    unsigned digits = 30;
};

/// ∫₀^∞ Γ((z-1+it)/4)Γ((z-1-it)/4)Ξ((t+iz)/2)Ξ((t-iz)/2)Δ₂(α,z/2,w,(1+it)/2)/((z+1)²+t²) dt.
QuadratureResult generalized_xi_integral(const Complex& z, const Complex& w, const Real& alpha,
                                         const PrecisionConfig& cfg);
/// Leading large-α term of that integral, -Γ(z+1)/(2^{z-1}π^{(z-3)/2})·α^{(z+1)/2}·l1_bracket.
Complex asymptotic_leading(const Complex& z, const Complex& w, const Real& alpha);
/// Leading term plus the k = 1..m-1 corrections.
Complex asymptotic_expansion(const Complex& z, const Complex& w, long m, const Real& alpha);

/// Throws ConfigError for fewer than three grid points or a non-increasing
/// grid, DomainError for α < 4, m < 1 or Re z outside (-1, 1).
AsymptoticScanReport scan_asymptotic(const Complex& z, const Complex& w, long m,
                                     const std::vector<Real>& alpha_grid, const PrecisionConfig& cfg);

/// Σ_{n≥1} σ_{-z}(n) n^{-s}: `terms` direct terms plus the mean-value
/// remainder ζ(1+z)Σ_{n>M} n^{-s} + ζ(1-z)Σ_{n>M} n^{-s-z}.
SeriesResult divisor_dirichlet_series(const Complex& s, const Complex& z, long terms,
                                      const PrecisionConfig& cfg);

enum class ReportFormat { json, csv };

std::string emit_report(const ResidualReport& r, ReportFormat format);
std::string emit_report(const AsymptoticScanReport& r, ReportFormat format);

/// Inverse of emit_report(…, json).  Throws DomainError on malformed input.
ResidualReport parse_residual_report(const std::string& json_text);
/// Inverse of emit_report(…, json) for scans.
AsymptoticScanReport parse_scan_report(const std::string& json_text);

/// Renders "re", "re+imi" or "re-imi".
std::string format_complex(const Complex& z, unsigned digits);

namespace detail {
/// Stirling estimate of log|Γ(σ + iy)|.
double log_gamma_envelope(double sigma, double y);
/// Estimate of log|ξ(σ + iy)| for 0 ≤ σ ≤ 1.
double log_xi_envelope(double sigma, double y);
/// Smallest T on a unit grid beyond which the log-envelope stays below
/// its peak on [0, 20] plus log(tol/10).
Real envelope_truncation(const std::function<double(double)>& log_envelope, double tol);
/// 1/(e^y - 1) - 1/y, accurate as y → 0.
Real bose_minus_pole(const Real& y);
}  // namespace detail

}  // namespace ximod
