#include "ximod/errors.hpp"
#include "ximod/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace ximod {

namespace bmp = boost::multiprecision;

PrecisionConfig PrecisionConfig::with_digits(unsigned digits) {
    PrecisionConfig c;
    c.working_digits = digits;
    c.target_abs_tol = std::pow(10.0, 5.0 - static_cast<double>(digits));
    c.target_rel_tol = c.target_abs_tol;
    return c;
}

PrecisionConfig PrecisionConfig::with_tolerance(double abs_tol, double rel_tol) const {
    PrecisionConfig c = *this;
    c.target_abs_tol = abs_tol;
    c.target_rel_tol = rel_tol;
    return c;
}

PrecisionConfig PrecisionConfig::tightened(int digits) const {
    const double f = std::pow(10.0, -digits);
    return with_tolerance(target_abs_tol * f, target_rel_tol * f);
}

void PrecisionConfig::validate() const {
    if (working_digits < 16 || working_digits > 300)
        throw ConfigError("working digits must lie in [16, 300]");
    if (!(target_abs_tol > 0) || !(target_rel_tol > 0))
        throw ConfigError("tolerances must be positive");
    const double floor = std::pow(10.0, -static_cast<double>(working_digits) - 30.0);
    if (target_abs_tol < floor || target_rel_tol < floor)
        throw ConfigError("tolerance finer than the working precision can deliver");
    if (max_evals <= 0) throw ConfigError("evaluation budget must be positive");
}

Complex power_tail_sum(const Complex& p, long M) {
    if (M < 1) throw DomainError("power tail needs M >= 1");
    if (!(p.real() > 1)) throw DomainError("power tail needs Re p > 1");
    const long N = std::max<long>(M + 1, 20 + static_cast<long>(std::ceil(abs(p).convert_to<double>())));
    CompensatedSum acc;
    for (long m = M + 1; m < N; ++m) acc.add(pow(Real(m), -p));
    const Real n(N);
    const Complex n_p = pow(n, -p);
    acc.add(n * n_p / (p - 1));
    acc.add(n_p / 2);
    // Euler–Maclaurin corrections: B_{2j}/(2j)! (p)_{2j-1} N^{-p-2j+1}.
    const auto& bern = bernoulli_b2n_table(60);
    const Real eps = working_epsilon() * abs(n_p);
    Complex rising = p;  // (p)_{2j-1}
    Real fact = 2;       // (2j)!
    Real npow = n;       // N^{2j-1}
    for (int j = 1; j <= 60; ++j) {
        Complex term = bern[j - 1] / fact * rising * n_p / npow;
        acc.add(term);
        if (abs(term) < eps) break;
        rising *= (p + Real(2 * j - 1)) * (p + Real(2 * j));
        fact *= Real((2 * j + 1) * (2 * j + 2));
        npow *= n * n;
    }
    return acc.value();
}

namespace {

Complex checked_term(const std::function<Complex(long)>& term, long m) {
    Complex v = term(m);
    if (!is_finite(v)) throw EvaluationError("series term " + std::to_string(m) + " is not finite");
    return v;
}

}  // namespace

SeriesResult sum_with_tail(const std::function<Complex(long)>& term, const TailModel& model,
                           const PrecisionConfig& cfg, long first) {
    cfg.validate();
    PrecisionScope scope(cfg.working_digits);
    SeriesResult out;

    if (const auto* pt = std::get_if<PowerTail>(&model)) {
        const long M = pt->terms;
        if (M < first + 4) throw ConfigError("power tail needs at least four direct terms");
        if (!(pt->exponent > 1)) throw ConfigError("power tail exponent must exceed 1");
        CompensatedSum acc;
        const long half = (first + M) / 2;
        Complex t_half, t_end;
        for (long m = first; m <= M; ++m) {
            Complex v = checked_term(term, m);
            if (m == half) t_half = v;
            if (m == M) t_end = v;
            acc.add(v);
        }
        Complex tail(0);
        if (!(t_half == Complex(0) && t_end == Complex(0))) {
            const double p = pt->exponent;
            if (t_end == Complex(0) || t_half == Complex(0))
                throw ModelMismatchError("series terms do not follow the declared power law");
            const double observed =
                -bmp::log(abs(t_end) / abs(t_half)).convert_to<double>() / std::log(double(M) / double(half));
            if (std::fabs(observed - p) > 0.5)
                throw ModelMismatchError("series terms decay like m^-" + std::to_string(observed) +
                                         ", declared exponent " + std::to_string(p));
            // Fit t(m) ~ c0 m^-p + c1 m^-(p+1) through m = half and m = M.
            const Real rp(p);
            const Real h(half), e(M);
            const Real hp = bmp::pow(h, -rp), ep = bmp::pow(e, -rp);
            const Real det = hp * ep / e - ep * hp / h;
            const Complex c0 = (t_half * (ep / e) - t_end * (hp / h)) / det;
            const Complex c1 = (t_end * hp - t_half * ep) / det;
            const Complex tail0 = power_tail_sum(Complex(rp), M);
            const Complex tail1 = power_tail_sum(Complex(Real(rp + 1)), M);
            tail = c0 * tail0 + c1 * tail1;
            out.tail_estimate = abs(c1 * tail1) / e + working_epsilon() * abs(tail);
        }
        out.value = acc.value() + tail;
        out.terms_used = M - first + 1;
        return out;
    }

    if (const auto* gt = std::get_if<GeometricTail>(&model)) {
        CompensatedSum acc;
        Complex prev(0), last(0);
        int small = 0;
        const Real rel(cfg.target_rel_tol / 100);
        const Real abs_tol(cfg.target_abs_tol / 100);
        for (long m = first; m < first + gt->max_terms; ++m) {
            prev = last;
            last = checked_term(term, m);
            acc.add(last);
            ++out.terms_used;
            const Real bound = std::max(abs_tol, rel * abs(acc.value()));
            small = abs(last) <= bound ? small + 1 : 0;
            if (small >= 3) {
                Real ratio = abs(prev) > 0 ? abs(last) / abs(prev) : Real(0);
                if (ratio >= 1) ratio = Real(1) / 2;
                out.value = acc.value();
                out.tail_estimate = abs(last) * ratio / (1 - ratio);
                return out;
            }
        }
        throw ConvergenceError("geometric series did not converge within " + std::to_string(gt->max_terms) +
                               " terms");
    }

    const auto& ct = std::get<CustomTail>(model);
    if (ct.terms < first) throw ConfigError("custom tail needs at least one direct term");
    CompensatedSum acc;
    for (long m = first; m <= ct.terms; ++m) acc.add(checked_term(term, m));
    auto [rem, unc] = ct.remainder(ct.terms);
    out.value = acc.value() + rem;
    out.tail_estimate = unc;
    out.terms_used = ct.terms - first + 1;
    return out;
}

}  // namespace ximod
