#include "ximod/classical.hpp"

#include "ximod/errors.hpp"
#include "ximod/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace ximod {

namespace bmp = boost::multiprecision;

namespace {

constexpr unsigned kGuard = 10;
constexpr long kSeriesCap = 200000;

bool is_integer(const Complex& z) { return z.imag() == 0 && bmp::floor(z.real()) == z.real(); }
bool is_nonpositive_integer(const Complex& z) { return is_integer(z) && z.real() <= 0; }

double magnitude(const Complex& z) { return abs(z).convert_to<double>(); }

std::string describe(const Complex& z) {
    std::ostringstream os;
    os << z;
    return os.str();
}

// Runs `body` with `extra` additional digits, promoting nothing itself: the
// body must lift its inputs with to_working().
template <class F>
auto with_guard(unsigned extra, F&& body) {
    const unsigned d = working_digits();
    auto r = [&] {
        PrecisionScope scope(d + extra);
        return body();
    }();
    return to_working(r);
}

// ---------------------------------------------------------------------------
// Gamma family (arguments already at the elevated precision)

Complex stirling_log_gamma(const Complex& z) {
    const auto& bern = bernoulli_b2n_table(200);
    const Real eps = working_epsilon() * abs(z);
    Complex acc = (z - Real(0.5)) * log(z) - z + log(2 * pi()) / 2;
    const Complex z2 = z * z;
    Complex zp = z;  // z^{2j-1}
    for (int j = 1; j <= 200; ++j) {
        Complex term = bern[j - 1] / Real(2 * j * (2 * j - 1)) / zp;
        acc += term;
        if (abs(term) < eps) break;
        zp *= z2;
    }
    return acc;
}

// Smallest shift k >= 0 with |s + k| >= 0.4·digits + 5.
long stirling_shift(const Complex& s) {
    const double radius = 0.4 * working_digits() + 5.0;
    const double im = std::abs(s.imag().convert_to<double>());
    const double re = s.real().convert_to<double>();
    const double need = im >= radius ? 0.0 : std::sqrt(radius * radius - im * im) - re;
    return std::max<long>(0, static_cast<long>(std::ceil(need)));
}

Complex log_gamma_right(const Complex& s) {
    const long shift = stirling_shift(s);
    Complex acc = stirling_log_gamma(s + Real(shift));
    for (long k = 0; k < shift; ++k) acc -= log(s + Real(k));
    return acc;
}

Complex gamma_impl(const Complex& s) {
    if (s.real() < Real(0.5)) {
        const Complex pis = pi() * s;
        return pi() / (sin(pis) * gamma_impl(Complex(1) - s));
    }
    return exp(log_gamma_right(s));
}

Complex rgamma_impl(const Complex& s) {
    if (is_nonpositive_integer(s)) return Complex(0);
    if (s.real() < Real(0.5)) return sin(pi() * s) * gamma_impl(Complex(1) - s) / pi();
    return exp(-log_gamma_right(s));
}

Complex digamma_impl(const Complex& a) {
    if (a.real() < Real(0.5)) {
        const Complex pa = pi() * a;
        return digamma_impl(Complex(1) - a) - pi() * cos(pa) / sin(pa);
    }
    const long shift = stirling_shift(a);
    Complex z = a + Real(shift);
    CompensatedSum acc;
    acc.add(log(z) - Complex(1) / (2 * z));
    const auto& bern = bernoulli_b2n_table(200);
    const Complex z2 = z * z;
    Complex zp = z2;
    const Real eps = working_epsilon();
    for (int j = 1; j <= 200; ++j) {
        Complex term = bern[j - 1] / Real(2 * j) / zp;
        acc.add(-term);
        if (abs(term) < eps) break;
        zp *= z2;
    }
    for (long k = 0; k < shift; ++k) acc.add(-(Complex(1) / (a + Real(k))));
    return acc.value();
}

// ---------------------------------------------------------------------------
// Hypergeometric series

struct SeriesOutcome {
    Complex sum;
    Real peak;
};

SeriesOutcome pfq_terms(const std::vector<Complex>& num, const std::vector<Complex>& den, const Complex& x) {
    Complex term(1);
    CompensatedSum acc;
    acc.add(term);
    Real peak = 1;
    const Real eps = working_epsilon();
    int quiet = 0;
    for (long n = 0; n < kSeriesCap; ++n) {
        Complex factor = x / Real(n + 1);
        for (const auto& a : num) factor *= a + Real(n);
        for (const auto& b : den) factor /= b + Real(n);
        term *= factor;
        if (term == Complex(0)) return {acc.value(), peak};
        acc.add(term);
        const Real m = abs(term);
        peak = std::max(peak, m);
        const bool shrinking = abs(factor) < 1;
        quiet = (shrinking && m <= eps * abs(acc.value())) ? quiet + 1 : 0;
        if (quiet >= 2) return {acc.value(), peak};
    }
    throw DomainError("hypergeometric series did not converge");
}

// Sums the series with enough guard digits to absorb the observed cancellation.
Complex pfq(const std::vector<Complex>& num, const std::vector<Complex>& den, const Complex& x) {
    const unsigned d = working_digits();
    auto run = [&](unsigned extra) {
        PrecisionScope scope(d + extra);
        std::vector<Complex> n2, d2;
        for (const auto& a : num) n2.push_back(to_working(a));
        for (const auto& b : den) d2.push_back(to_working(b));
        return pfq_terms(n2, d2, to_working(x));
    };
    SeriesOutcome first = run(kGuard);
    const Real size = abs(first.sum);
    double loss = 0;
    if (size > 0) loss = bmp::log10(first.peak / size).convert_to<double>();
    else loss = bmp::log10(first.peak).convert_to<double>() + d;
    if (loss > 8) {
        const unsigned extra = kGuard + static_cast<unsigned>(std::ceil(std::min(loss, 400.0)));
        SeriesOutcome second = run(extra);
        return to_working(second.sum);
    }
    return to_working(first.sum);
}

// ---------------------------------------------------------------------------
// Euler–Maclaurin Hurwitz zeta, optionally multiplied by (s-1).

Complex hurwitz_em(const Complex& s, const Real& a, bool times_pole) {
    const long N = 20 + static_cast<long>(std::ceil(magnitude(s) + 0.2 * working_digits()));
    const Complex sm1 = s - Real(1);
    CompensatedSum direct;
    for (long k = 0; k < N; ++k) direct.add(pow(Real(a + k), -s));
    const Real na = a + N;
    const Complex np = pow(na, -s);
    CompensatedSum acc;
    acc.add(times_pole ? direct.value() * sm1 : direct.value());
    acc.add(times_pole ? na * np : na * np / sm1);
    CompensatedSum corr;
    corr.add(np / 2);
    const auto& bern = bernoulli_b2n_table(200);
    const Real eps = working_epsilon() * (abs(np) + Real(1e-300));
    Complex rising = s;
    Real fact = 2;
    Real npow = na;
    Real last = -1;
    for (int j = 1; j <= 200; ++j) {
        Complex term = bern[j - 1] / fact * rising * np / npow;
        const Real m = abs(term);
        if (last >= 0 && m > last) break;  // asymptotic series began to diverge
        corr.add(term);
        if (m < eps) break;
        last = m;
        rising *= (s + Real(2 * j - 1)) * (s + Real(2 * j));
        fact *= Real((2 * j + 1) * (2 * j + 2));
        npow *= na * na;
    }
    acc.add(times_pole ? corr.value() * sm1 : corr.value());
    return acc.value();
}

unsigned zeta_guard(const Complex& s) {
    return kGuard + static_cast<unsigned>(2 * std::log10(2.0 + magnitude(s)));
}

// ---------------------------------------------------------------------------
// Gauss ₂F₁ transformations

Complex hyp2f1_direct(const Complex& a, const Complex& b, const Complex& c, const Complex& x) {
    return pfq({a, b}, {c}, x);
}

}  // namespace

// ---------------------------------------------------------------------------

Complex gamma_complex(const Complex& s) {
    if (is_nonpositive_integer(s)) throw PoleError("gamma", "s=" + describe(s));
    return with_guard(kGuard + 2 * static_cast<unsigned>(std::log10(2.0 + magnitude(s))),
                      [&] { return gamma_impl(to_working(s)); });
}

Complex rgamma(const Complex& s) {
    return with_guard(kGuard + 2 * static_cast<unsigned>(std::log10(2.0 + magnitude(s))),
                      [&] { return rgamma_impl(to_working(s)); });
}

Complex log_gamma(const Complex& s) {
    if (!(s.real() > 0)) throw DomainError("log_gamma requires Re s > 0");
    return with_guard(kGuard, [&] { return log_gamma_right(to_working(s)); });
}

Complex digamma(const Complex& a) {
    if (is_nonpositive_integer(a)) throw PoleError("digamma", "a=" + describe(a));
    return with_guard(kGuard, [&] { return digamma_impl(to_working(a)); });
}

Real harmonic_number(long n) {
    CompensatedSum acc;
    for (long k = 1; k <= n; ++k) acc.add(Complex(Real(Real(1) / k)));
    return acc.value().real();
}

// ---------------------------------------------------------------------------

Complex erf_over_arg(const Complex& w) {
    const unsigned extra = kGuard + static_cast<unsigned>(norm(w).convert_to<double>() / std::log(10.0));
    return with_guard(extra, [&] {
        const Complex q = -(to_working(w) * to_working(w));
        Complex power(1);
        CompensatedSum acc;
        const Real eps = working_epsilon();
        Real fact = 1;
        for (long n = 0; n < kSeriesCap; ++n) {
            if (n > 0) {
                power *= q;
                fact *= n;
            }
            Complex term = power / (fact * (2 * n + 1));
            acc.add(term);
            if (n > 2 && abs(term) <= eps * abs(acc.value()) && Real(n) > abs(q)) break;
        }
        return acc.value() * (2 / bmp::sqrt(pi()));
    });
}

Complex erfi_over_arg(const Complex& w) { return erf_over_arg(imag_unit() * w); }

Complex erf(const Complex& w) { return w * erf_over_arg(w); }

Complex erfi(const Complex& w) { return w * erfi_over_arg(w); }

ErfPair erf_family(const Complex& w) { return {erf(w), erfi(w)}; }

// ---------------------------------------------------------------------------

Complex hyp1f1(const Complex& a, const Complex& c, const Complex& x) {
    if (is_nonpositive_integer(c)) throw DomainError("hyp1f1: c = " + describe(c) + " is a non-positive integer");
    if (x == Complex(0)) return Complex(1);
    return pfq({a}, {c}, x);
}

Complex hyp1f1_param_derivative(int sign, const Complex& x) {
    if (sign != 1 && sign != -1) throw DomainError("hyp1f1_param_derivative: sign must be +1 or -1");
    const unsigned extra = kGuard + static_cast<unsigned>(2 * magnitude(x) / std::log(10.0));
    Complex s = with_guard(extra, [&] {
        const Complex xx = to_working(x);
        Complex t(1);  // x^n/(3/2)_n
        Real h = 0;    // H_n
        CompensatedSum acc;
        const Real eps = working_epsilon();
        for (long n = 1; n < kSeriesCap; ++n) {
            t *= xx / (Real(n) + Real(0.5));
            h += Real(1) / n;
            Complex term = t * h;
            acc.add(term);
            if (Real(n) > abs(xx) && abs(term) <= eps * abs(acc.value())) break;
        }
        return acc.value() / 2;
    });
    return sign > 0 ? s : -s;
}

Complex hyp2f1(const Complex& a, const Complex& b, const Complex& c, const Complex& x) {
    if (is_nonpositive_integer(c)) throw DomainError("hyp2f1: c = " + describe(c) + " is a non-positive integer");
    if (x == Complex(0)) return Complex(1);
    // Terminating series need no transformation.
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return hyp2f1_direct(a, b, c, x);
    if (x.imag() == 0 && x.real() >= 1) throw DomainError("hyp2f1: argument on the branch cut [1, inf)");

    const Complex one(1);
    const Real r_direct = abs(x);
    const Real r_pfaff = abs(x / (x - one));
    const bool inversion_ok = !is_integer(a - b);
    const Real r_inv = inversion_ok ? Real(1 / abs(x)) : Real(2);
    const bool reflect_ok = !is_integer(c - a - b);
    const Real r_refl = reflect_ok ? abs(one - x) : Real(2);
    const Real best = std::min({r_direct, r_pfaff, r_inv, r_refl});
    if (best >= Real(0.995)) throw DomainError("hyp2f1: no convergent transformation for this argument");

    if (best == r_direct) return hyp2f1_direct(a, b, c, x);
    if (best == r_pfaff) return pow(one - x, -a) * hyp2f1_direct(a, c - b, c, x / (x - one));
    if (best == r_inv) {
        const Complex mx = -x;
        const Complex gc = gamma_complex(c);
        const Complex t1 = gc * gamma_complex(b - a) * rgamma(b) * rgamma(c - a) * pow(mx, -a) *
                           hyp2f1_direct(a, a - c + one, a - b + one, one / x);
        const Complex t2 = gc * gamma_complex(a - b) * rgamma(a) * rgamma(c - b) * pow(mx, -b) *
                           hyp2f1_direct(b, b - c + one, b - a + one, one / x);
        return t1 + t2;
    }
    const Complex y = one - x;
    const Complex gc = gamma_complex(c);
    const Complex t1 = gc * gamma_complex(c - a - b) * rgamma(c - a) * rgamma(c - b) *
                       hyp2f1_direct(a, b, a + b - c + one, y);
    const Complex t2 = gc * gamma_complex(a + b - c) * rgamma(a) * rgamma(b) * pow(y, c - a - b) *
                       hyp2f1_direct(c - a, c - b, c - a - b + one, y);
    return t1 + t2;
}

// ---------------------------------------------------------------------------

Complex hurwitz_zeta(const Complex& s, const Real& a) {
    if (!(a > 0)) throw DomainError("hurwitz_zeta requires a > 0");
    if (s == Complex(1)) throw PoleError("hurwitz_zeta", "s=1");
    return with_guard(zeta_guard(s), [&] { return hurwitz_em(to_working(s), to_working(a), false); });
}

Complex zeta_times_pole(const Complex& s) {
    return with_guard(zeta_guard(s), [&] { return hurwitz_em(to_working(s), Real(1), true); });
}

Complex zeta_complex(const Complex& s) {
    if (s == Complex(1)) throw PoleError("zeta", "s=1");
    if (s.real() < 0) {
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        return with_guard(zeta_guard(s), [&] {
            const Complex ss = to_working(s);
            const Complex one(1);
            return pow(Real(2), ss) * pow(pi(), ss - one) * sin(pi() * ss / 2) * gamma_impl(one - ss) *
                   hurwitz_em(one - ss, Real(1), false);
        });
    }
    return hurwitz_zeta(s, Real(1));
}

Complex xi(const Complex& s_in) {
    return with_guard(zeta_guard(s_in), [&] {
        Complex s = to_working(s_in);
        if (s.real() < Real(0.5)) s = Complex(1) - s;
        const Complex half_s = s / 2;
        return half_s * pow(pi(), -half_s) * gamma_impl(half_s) * hurwitz_em(s, Real(1), true);
    });
}

Real Xi(const Real& t) { return xi(Complex(Real(0.5), t)).real(); }

// ---------------------------------------------------------------------------

Real bessel_j0(const Real& x) {
    if (x < 0) throw DomainError("bessel_j0 requires x >= 0");
    if (x == 0) return Real(1);
    const double digits = working_digits();
    const double xd = x.convert_to<double>();
    if (2.0 * xd / std::log(10.0) <= digits + 5.0) {
        const unsigned extra = kGuard + static_cast<unsigned>(xd / std::log(10.0));
        return with_guard(extra, [&] {
            const Real xx = to_working(x);
            const Real q = -(xx * xx) / 4;
            Real term = 1;
            CompensatedSum acc;
            acc.add(Complex(term));
            const Real eps = working_epsilon();
            for (long k = 1; k < kSeriesCap; ++k) {
                term *= q / (Real(k) * k);
                acc.add(Complex(term));
                if (Real(k) > xx && bmp::abs(term) <= eps) break;
            }
            return acc.value().real();
        });
    }
    // Hankel asymptotic expansion.
    return with_guard(kGuard, [&] {
        const Real xx = to_working(x);
        // u_k = prod_{j<=k} (2j-1)^2/(8 j x); P = 1 - u_2 + u_4 - ..., Q = -u_1 + u_3 - ...
        Real p = 1, q = 0;
        Real u = 1;
        const Real eps = working_epsilon();
        for (int k = 1; k < 400; ++k) {
            const Real odd = Real(2 * k - 1);
            const Real next = u * odd * odd / (8 * k * xx);
            if (next > u) break;
            u = next;
            const bool negative = (k % 2 == 0) ? (k / 2) % 2 == 1 : ((k - 1) / 2) % 2 == 0;
            Real& target = (k % 2 == 0) ? p : q;
            target += negative ? -u : u;
            if (u < eps) break;
        }
        const Real chi = xx - pi() / 4;
        return bmp::sqrt(2 / (pi() * xx)) * (p * bmp::cos(chi) - q * bmp::sin(chi));
    });
}

Complex bessel_k(const Complex& nu, const Real& x) {
    if (!(x > 0)) throw DomainError("bessel_k requires x > 0");
    const unsigned d = working_digits();
    const PrecisionConfig cfg = PrecisionConfig::with_digits(d).tightened(3);
    RealIntegrand f = [&](const Real& t) { return exp(Complex(Real(-x * bmp::cosh(t)))) * cosh(nu * t); };
    QuadratureResult r = integrate_semi_infinite(f, Real(0), DecayHint::exponential, cfg);
    if (!r.converged) throw ConvergenceError("bessel_k quadrature did not converge");
    return to_working(r.value);
}

Complex bessel_family(BesselKind kind, const Complex& nu, const Real& x) {
    if (!(x > 0)) throw DomainError("bessel functions require x > 0");
    if (kind == BesselKind::J0) return Complex(bessel_j0(x));
    return bessel_k(nu, x);
}

Complex divisor_sigma(const Complex& z, long n) {
    if (n < 1) throw DomainError("divisor_sigma requires n >= 1");
    std::vector<long> divisors;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        divisors.push_back(d);
        if (d * d != n) divisors.push_back(n / d);
    }
    std::sort(divisors.begin(), divisors.end());
    CompensatedSum acc;
    for (long d : divisors) acc.add(pow(Real(d), -z));
    return acc.value();
}

}  // namespace ximod
