#include "ximod/generalized.hpp"

#include "ximod/classical.hpp"
#include "ximod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ximod {

namespace bmp = boost::multiprecision;

namespace {

constexpr unsigned kGuard = 10;

template <class F>
auto with_guard(unsigned extra, F&& body) {
    const unsigned d = working_digits();
    auto r = [&] {
        PrecisionScope scope(d + extra);
        return body();
    }();
    return to_working(r);
}

Complex quarter_square(const Complex& w) {
    const Complex v = to_working(w);
    return v * v / 4;
}

bool is_zero(const Complex& z) { return z.real() == 0 && z.imag() == 0; }

long em_cutoff(const Complex& s) {
    return std::max<long>(20, static_cast<long>(working_digits() / 2) +
                                  static_cast<long>(std::ceil(abs(s).convert_to<double>())));
}

// Trigonometric data of an angle in (0, π/2) given its distances to both
// endpoints; the half nearer an endpoint is evaluated from that distance.
struct Angle {
    Real sin_t, cos_t;
    Real twice;       // 2θ or 2φ with φ = π/2 - θ
    bool reflected;   // sin(2nθ) = (-1)^{n+1} sin(2nφ)
};

Angle make_angle(const Real& from_a, const Real& from_b) {
    if (from_a <= from_b) return {bmp::sin(from_a), bmp::cos(from_a), 2 * from_a, false};
    return {bmp::cos(from_b), bmp::sin(from_b), 2 * from_b, true};
}

// Σ_{n≥1} coef(n) q^{n-1} sin(2nθ)/cos θ, with coef(n) supplied incrementally
// as the ratio coef(n)/coef(n-1).
template <class Ratio>
Complex angular_series(const Angle& ang, const Complex& q, const Complex& coef1, Ratio&& ratio) {
    const Real c2 = bmp::cos(ang.twice);
    const Real s1 = bmp::sin(ang.twice);
    Real prev(0), cur = s1;  // sin(0·x), sin(1·x)
    Complex coef = coef1;
    Complex qp(1);
    Complex acc(0);
    const Real eps = working_epsilon();
    for (long n = 1; n < 100000; ++n) {
        const Real sn = (ang.reflected && n % 2 == 0) ? Real(-cur) : cur;
        Complex term = coef * qp * sn;
        acc += term;
        if (n > 2 && abs(coef * qp) < eps * (abs(acc) + abs(coef1) * s1) && n > abs(q)) break;
        Real next = 2 * c2 * cur - prev;
        prev = cur;
        cur = next;
        coef *= ratio(n + 1);
        qp *= q;
    }
    return acc / ang.cos_t;
}

// Gegenbauer C_m^λ(x) for m = 0..count.
std::vector<Complex> gegenbauer(const Complex& lambda, const Real& x, int count) {
    std::vector<Complex> c(count + 1);
    c[0] = Complex(1);
    if (count >= 1) c[1] = 2 * lambda * x;
    for (int m = 2; m <= count; ++m)
        c[m] = (2 * x * (lambda + Real(m - 1)) * c[m - 1] - (2 * lambda + Real(m - 2)) * c[m - 2]) / Real(m);
    return c;
}

Complex lattice_zeta_impl(const Complex& s, const Real& b) {
    if (b == 0) return zeta_complex(s);
    const long N = em_cutoff(s);
    const Real n(N);
    const Real b2 = b * b;
    const Complex hs = s / 2;
    CompensatedSum acc;
    for (long k = 1; k < N; ++k) acc.add(pow(Real(Real(k * k) + b2), -hs));
    if (b <= n) {
        const Complex y = Complex(Real(-b2 / (n * n)));
        acc.add(pow(n, Complex(1) - s) / (s - 1) * hyp2f1(hs, (s - 1) / 2, (s + 1) / 2, y));
    } else {
        const Complex whole = pow(b, Complex(1) - s) * bmp::sqrt(pi()) * gamma_complex((s - 1) / 2) /
                              (2 * gamma_complex(hs));
        const Complex head = n * pow(b, -s) * hyp2f1(hs, Complex(0.5), Complex(1.5), Complex(Real(-n * n / b2)));
        acc.add(whole - head);
    }
    const Real rho = bmp::sqrt(n * n + b2);
    const Complex rho_s = pow(rho, -s);
    acc.add(rho_s / 2);
    const auto& bern = bernoulli_b2n_table(80);
    const auto cg = gegenbauer(hs, Real(-n / rho), 2 * 80);
    const Real eps = working_epsilon() * abs(acc.value());
    Real rpow = rho;  // ρ^{2j-1}
    for (int j = 1; j <= 80; ++j) {
        // g^{(2j-1)}(N) = (2j-1)! C_{2j-1}(-N/ρ) ρ^{-s-2j+1}; B_{2j}/(2j)! · (2j-1)! = B_{2j}/(2j)
        Complex term = bern[j - 1] / Real(2 * j) * cg[2 * j - 1] * rho_s / rpow;
        acc.add(-term);
        if (abs(term) < eps) break;
        rpow *= rho * rho;
    }
    return acc.value();
}

Real legendre_next(int m, const Real& x, const Real& p1, const Real& p2) {
    return ((2 * m - 1) * x * p1 - (m - 1) * p2) / m;
}

Real psi_kernel_impl(const Real& b) {
    if (b == 0) return -euler_gamma();
    const long N = std::max<long>(20, working_digits() / 2);
    const Real n(N);
    const Real b2 = b * b;
    Real acc = -euler_gamma();
    for (long k = 1; k < N; ++k) {
        const Real kk(k);
        const Real r = bmp::sqrt(kk * kk + b2);
        acc += b2 / (kk * r * (r + kk));
    }
    const Real rho = bmp::sqrt(n * n + b2);
    acc += bmp::log((n + rho) / (2 * n));
    acc += b2 / (2 * n * rho * (n + rho));
    // f1 = 1/x, f2 = (x²+b²)^{-1/2}: f^{(m)}(N)/m! = (-1)^m/N^{m+1} and P_m(-N/ρ)/ρ^{m+1}.
    const auto& bern = bernoulli_b2n_table(80);
    const Real x = -n / rho;
    Real p_prev(1), p_cur = x;  // P_0, P_1
    int m = 1;
    Real npow = n * n, rpow = rho * rho;  // N^{m+1}, ρ^{m+1}
    const Real eps = working_epsilon();
    for (int j = 1; j <= 80; ++j) {
        while (m < 2 * j - 1) {
            Real next = legendre_next(m + 1, x, p_cur, p_prev);
            p_prev = p_cur;
            p_cur = next;
            ++m;
            npow *= n;
            rpow *= rho;
        }
        const Real diff = -Real(1) / npow - p_cur / rpow;
        const Real term = bern[j - 1] / Real(2 * j) * diff;
        acc -= term;
        if (bmp::abs(term) < eps) break;
    }
    return acc;
}

void require_positive(const Real& a, const char* what) {
    if (!(a > 0)) throw DomainError(std::string(what) + " must be positive");
}

QuadratureResult angular_integral(const EndpointIntegrand& f, const PrecisionConfig& cfg, const char* name) {
    QuadratureResult r = integrate_finite(f, Real(0), pi() / 2, cfg);
    if (!r.converged)
        throw ConvergenceError(std::string(name) + ": quadrature over the angle axis did not converge");
    return r;
}

}  // namespace

namespace detail {

Real psi_kernel(const Real& b) {
    return with_guard(kGuard, [&] { return psi_kernel_impl(to_working(bmp::abs(b))); });
}

Complex lattice_zeta(const Complex& s, const Real& b) {
    if (!(s.real() > 1)) throw DomainError("lattice zeta needs Re s > 1");
    return with_guard(kGuard, [&] { return lattice_zeta_impl(to_working(s), to_working(bmp::abs(b))); });
}

}  // namespace detail

Complex zeta_w_direct(const Complex& s_in, const Real& a_in, const Complex& w_in, const PrecisionConfig& cfg) {
    cfg.validate();
    if (!(s_in.real() > 1)) throw DomainError("zeta_w_direct needs Re s > 1; use the Laurent data near s = 1");
    require_positive(a_in, "a");
    PrecisionScope scope(cfg.working_digits);
    const Complex s = to_working(s_in);
    const Real c = bmp::abs(to_working(a_in) - 1);
    const Complex q = quarter_square(w_in);
    const Complex hs = s / 2;
    const Complex sm1 = s - 1;
    const Complex z_const = c == 0 ? lattice_zeta_impl(s, Real(0)) : Complex(0);
    // κ_n = (s/2)_n / ((1/2)_n n!)
    auto ratio = [&](long n) { return (hs + Real(n - 1)) / (Real(n) * Real(n - Real(0.5))); };
    const Complex kappa1 = s;
    EndpointIntegrand f = [&](const Real&, const Real& da, const Real& db) -> Complex {
        const Angle ang = make_angle(da, db);
        if (ang.sin_t == 0) return Complex(0);
        const Complex zs = c == 0 ? z_const : lattice_zeta_impl(s, Real(c * ang.sin_t / ang.cos_t));
        return pow(ang.sin_t, sm1) * zs * angular_series(ang, q, kappa1, ratio);
    };
    QuadratureResult r = angular_integral(f, cfg, "zeta_w");
    const Complex pre = gamma_complex(hs) / (2 * bmp::sqrt(pi()) * gamma_complex((s + 1) / 2));
    return pre * r.value;
}

Complex zeta_w_residue(const Complex& w) {
    return with_guard(kGuard, [&] {
        const Complex q = quarter_square(w);
        const Complex f = hyp1f1(Complex(1), Complex(1.5), -q);
        return exp(q) * f * f;
    });
}

Complex zeta_w_residue_erfi(const Complex& w) {
    return with_guard(kGuard, [&] {
        const Complex v = to_working(w);
        const Complex e = erfi_over_arg(v / 2);
        return pi() / 4 * exp(-v * v / 4) * e * e;
    });
}

Complex psi_w_integral(const Real& a_in, const Complex& w_in, const PrecisionConfig& cfg) {
    cfg.validate();
    require_positive(a_in, "a");
    PrecisionScope scope(cfg.working_digits);
    const Real c = bmp::abs(to_working(a_in) - 1);
    const Complex q = quarter_square(w_in);
    auto ratio = [](long n) { return Complex(Real(1) / Real(n)); };
    EndpointIntegrand f = [&](const Real&, const Real& da, const Real& db) -> Complex {
        const Angle ang = make_angle(da, db);
        const Real kernel = c == 0 ? Real(-euler_gamma()) : psi_kernel_impl(Real(c * ang.sin_t / ang.cos_t));
        return kernel * angular_series(ang, q, Complex(1), ratio);
    };
    QuadratureResult r = angular_integral(f, cfg, "psi_w");
    return r.value / 2;
}

LaurentData zeta_w_laurent(const Real& a, const Complex& w, const PrecisionConfig& cfg) {
    cfg.validate();
    require_positive(a, "a");
    PrecisionScope scope(cfg.working_digits);
    const Complex residue = zeta_w_residue(w);
    const Real shifted = to_working(a) + 1;
    std::vector<Real> h;
    std::vector<Complex> g;
    for (int k = 1; k <= 4; ++k) {
        const Real hk = bmp::pow(Real(10), -k);
        h.push_back(hk);
        g.push_back(residue / hk - zeta_w_direct(Complex(Real(1 + hk)), shifted, w, cfg));
    }
    for (std::size_t k = 2; k < g.size(); ++k) {
        if (!(abs(g[k] - g[k - 1]) < abs(g[k - 1] - g[k - 2])))
            throw OracleFailure("Laurent extrapolation differences are not monotone");
    }
    // Neville's scheme evaluated at h = 0.
    std::vector<Complex> p = g;
    for (std::size_t m = 1; m < p.size(); ++m)
        for (std::size_t i = p.size() - 1; i >= m; --i)
            p[i] = (h[i - m] * p[i] - h[i] * p[i - 1]) / (h[i - m] - h[i]);
    return {residue, -p.back()};
}

Complex psi_w_laurent(const Real& a, const Complex& w, const PrecisionConfig& cfg) {
    return -zeta_w_laurent(a, w, cfg).constant_term;
}

Complex coefficient_C(const Complex& w) {
    return with_guard(kGuard, [&] {
        const Complex v = to_working(w);
        const Complex e = erf_over_arg(v / 2);
        return pi() / 4 * exp(v * v / 4) * e * e;
    });
}

Complex coefficient_B(const Complex& w) {
    return with_guard(kGuard, [&] {
        const Complex v = to_working(w);
        const Complex x = v * v / 4;
        CompensatedSum acc;
        Complex t(1);  // x^n / (3/2)_n
        Real h(0);
        const Real eps = working_epsilon();
        for (long n = 1; n < 200000; ++n) {
            t *= x / Real(Real(n) + Real(0.5));
            h += Real(1) / Real(n);
            const Complex term = t * h;
            acc.add(term);
            if (abs(term) <= eps * abs(acc.value()) && n > abs(x)) break;
            if (is_zero(term)) break;
        }
        return bmp::sqrt(pi()) / 2 * erf_over_arg(v / 2) * acc.value();
    });
}

Complex coefficient_A(const Complex& z, const Complex& w) {
    return with_guard(kGuard, [&] {
        const Complex v = to_working(w);
        const Complex q = v * v / 4;
        return bmp::sqrt(pi()) / 2 * erf_over_arg(v / 2) * hyp1f1(Complex(1) + to_working(z) / 2, Complex(1.5), q);
    });
}

Complex coefficient_A_product(const Complex& z, const Complex& w) {
    return with_guard(kGuard, [&] {
        const Complex q = quarter_square(w);
        return exp(-q) * hyp1f1(Complex(1), Complex(1.5), q) *
               hyp1f1(Complex(1) + to_working(z) / 2, Complex(1.5), q);
    });
}

Complex lambda_w(const Real& x, const Complex& w, const PrecisionConfig& cfg) {
    require_positive(x, "x");
    cfg.validate();
    PrecisionScope scope(cfg.working_digits);
    const Real xv = to_working(x);
    const Complex iw = imag_unit() * to_working(w);
    return psi_w_integral(Real(xv + 1), w, cfg) - coefficient_C(w) / (2 * xv) - coefficient_C(iw) * bmp::log(xv) -
           coefficient_B(iw) / 2;
}

Complex phi_classical(const Complex& z, const Real& x) {
    require_positive(x, "x");
    if (is_zero(z)) throw DomainError("phi(z,x) has a removable singularity at z = 0; use phi_digamma or lambda_w");
    if (!(z.real() > -1 && z.real() < 1)) throw DomainError("phi(z,x) needs -1 < Re z < 1");
    return with_guard(kGuard, [&] {
        const Complex zz = to_working(z);
        const Real xx = to_working(x);
        return hurwitz_zeta(zz + 1, xx) - pow(xx, -zz) / zz - pow(xx, -zz - 1) / 2;
    });
}

Real phi_digamma(const Real& x) {
    require_positive(x, "x");
    return with_guard(kGuard, [&] {
        const Real xx = to_working(x);
        return Real(digamma(Complex(xx)).real() + 1 / (2 * xx) - bmp::log(xx));
    });
}

Complex phi_w(const Complex& z, const Real& x, const Complex& w, const PrecisionConfig& cfg) {
    require_positive(x, "x");
    if (is_zero(z)) throw DomainError("phi_w(z,x) has a removable singularity at z = 0; use lambda_w");
    if (!(z.real() > 0 && z.real() < 1)) throw DomainError("phi_w needs 0 < Re z < 1");
    cfg.validate();
    PrecisionScope scope(cfg.working_digits);
    const Complex zz = to_working(z);
    const Real xx = to_working(x);
    const Complex iw = imag_unit() * to_working(w);
    return zeta_w_direct(zz + 1, Real(xx + 1), w, cfg) + coefficient_A(zz, w) * pow(xx, -zz - 1) / 2 -
           coefficient_A(-zz, iw) * pow(xx, -zz) / zz;
}

AsymptoticValue zeta_w_asymptotic(const Complex& s, const Real& a, const Complex& w) {
    if (!(s.real() > -1 && s.real() < 2)) throw DomainError("asymptotic expansion needs -1 < Re s < 2");
    if (s == Complex(1)) throw PoleError("asymptotic expansion", "s = 1");
    require_positive(a, "a");
    AsymptoticValue out;
    out.value = with_guard(kGuard, [&] {
        const Complex ss = to_working(s);
        const Real aa = to_working(a);
        const Complex iw = imag_unit() * to_working(w);
        return -pow(aa, -ss) / 2 * coefficient_A(ss - 1, w) +
               pow(aa, Complex(1) - ss) / (ss - 1) * coefficient_A(Complex(1) - ss, iw);
    });
    if (a < 8) out.warning = "a < 8: the two-term expansion is inaccurate";
    return out;
}

Complex kernel_omega(const Real& x, const Complex& z, const Complex& w, const Complex& s) {
    require_positive(x, "x");
    return with_guard(kGuard, [&] {
        const Complex q = quarter_square(w);
        const Complex ss = to_working(s), zz = to_working(z);
        return exp(q) * pow(to_working(x), Complex(0.5) - ss) *
               hyp1f1(Complex(1) - (ss + zz) / 2, Complex(1.5), -q) *
               hyp1f1(Complex(1) - (ss - zz) / 2, Complex(1.5), -q);
    });
}

Complex kernel_delta2(const Real& x, const Complex& z, const Complex& w, const Complex& s) {
    return kernel_omega(x, z, w, s) + kernel_omega(x, z, w, Complex(1) - s);
}

Complex kernel_rho(const Real& x, const Complex& w, const Complex& s) {
    require_positive(x, "x");
    return with_guard(kGuard, [&] {
        const Complex q = quarter_square(w);
        const Complex ss = to_working(s);
        return pow(to_working(x), Complex(0.5) - ss) * exp(-q / 2) *
               hyp1f1((Complex(1) - ss) / 2, Complex(0.5), q);
    });
}

Complex kernel_nabla(const Real& x, const Complex& w, const Complex& s) {
    return kernel_rho(x, w, s) + kernel_rho(x, w, Complex(1) - s);
}

Complex k1_bessel(const Complex& z_in, const Complex& w_in, const Real& x_in, const PrecisionConfig& cfg,
                  std::optional<Real> abscissa) {
    require_positive(x_in, "x");
    cfg.validate();
    PrecisionScope scope(cfg.working_digits);
    const Complex z = to_working(z_in);
    const Real x = to_working(x_in);
    const Complex q = quarter_square(w_in);
    const Real re_z = z.real();
    const Real c = abscissa ? to_working(*abscissa) : Real(std::max(Real(0), re_z) + Real(0.5));
    if (!(c > -1 + re_z && c > -1 - re_z))
        throw ContourError("Mellin-Barnes abscissa must satisfy c > -1 + |Re z|");
    auto g = [&](const Complex& s) {
        const Complex u1 = (Complex(1) + s - z) / 2;
        const Complex u2 = (Complex(1) + s + z) / 2;
        return gamma_complex(u1) * gamma_complex(u2) * hyp1f1(u1, Complex(1.5), -q) *
               hyp1f1(u2, Complex(1.5), -q) * pow(Real(2), s - 1) * pow(x, -s);
    };
    const bool symmetric = z.imag() == 0 && q.imag() == 0;
    QuadratureResult r = mellin_barnes_line(g, c, cfg, symmetric);
    if (!r.converged) throw ConvergenceError("1K_{z,w}: Mellin-Barnes quadrature did not converge");
    return r.value;
}

Complex k1_bessel_series(const Complex& z, const Complex& w, const Real& x) {
    require_positive(x, "x");
    const Complex two_z = z * 2;
    if (two_z.imag() == 0 && bmp::floor(two_z.real()) == two_z.real())
        throw DomainError("residue series needs 2z not an integer");
    const unsigned extra = kGuard + static_cast<unsigned>(2 * x.convert_to<double>() / std::log(10.0));
    return with_guard(extra, [&] {
        const Complex q = quarter_square(w);
        const Complex zz = to_working(z);
        const Real xx = to_working(x);
        const Real eps = working_epsilon();
        Complex total(0);
        for (int sign : {1, -1}) {
            const Complex nu = sign == 1 ? zz : -zz;
            Complex gam = gamma_complex(nu);               // Γ(ν-k)
            Complex pw = pow(Real(2), nu - 2) * pow(xx, Complex(1) - nu);  // 2^{ν-2-2k} x^{1-ν+2k}
            Real fact(1);
            const Real step = xx * xx / 4;
            for (long k = 0; k < 100000; ++k) {
                if (k > 0) {
                    gam /= nu - Real(k);
                    fact *= Real(k);
                    pw *= step;
                }
                const Complex term = 2 * gam * hyp1f1(Complex(Real(-k)), Complex(1.5), -q) *
                                     hyp1f1(nu - Real(k), Complex(1.5), -q) * pw / fact;
                total += (k % 2 == 0) ? term : -term;
                if (k > 4 && abs(term) < eps * abs(total) && Real(k) > xx) break;
            }
        }
        return total;
    });
}

Complex l1_limit(const Complex& w, const Real& alpha) {
    require_positive(alpha, "alpha");
    return with_guard(kGuard, [&] {
        const Real al = to_working(alpha);
        return (euler_gamma() - bmp::log(2 * pi() * al)) / (2 * al) * coefficient_C(w) + coefficient_B(w) / (2 * al);
    });
}

Complex l1_bracket(const Complex& z, const Complex& w, const Real& alpha) {
    require_positive(alpha, "alpha");
    if (is_zero(z)) return l1_limit(w, alpha);
    return with_guard(kGuard, [&] {
        const Complex zz = to_working(z);
        const Real al = to_working(alpha);
        return zeta_complex(zz + 1) * coefficient_A(zz, w) / (2 * pow(al, zz + 1)) +
               zeta_complex(zz) * coefficient_A(-zz, w) / (al * zz);
    });
}

Complex l2_limit(const Complex& w, const Real& alpha, long m) {
    require_positive(alpha, "alpha");
    if (m < 1) throw DomainError("m must be a positive integer");
    return with_guard(kGuard, [&] {
        const Complex iw = imag_unit() * to_working(w);
        return coefficient_C(iw) * bmp::log(Real(m) * to_working(alpha)) + coefficient_B(iw) / 2;
    });
}

}  // namespace ximod
