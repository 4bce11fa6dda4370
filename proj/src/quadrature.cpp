#include "ximod/errors.hpp"
#include "ximod/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace ximod {

namespace bmp = boost::multiprecision;

namespace {

constexpr int kMaxLevel = 6;
constexpr int kMinLevel = 3;
constexpr int kMaxDepth = 28;

struct Budget {
    long evals = 0;
    long limit;
};

struct PanelResult {
    Complex value;
    Real error{0};
    bool converged = false;
};

Complex checked(const Complex& v) {
    if (!is_finite(v)) throw EvaluationError("integrand returned a non-finite value");
    return v;
}

// Tanh-sinh rule on [l, r] inside the original interval [A, B].  dl = l - A
// and dr = B - r carry the offsets that turn local endpoint distances into
// distances from A and B.
class Panel {
public:
    Panel(const EndpointIntegrand& f, const Real& l, const Real& r, const Real& dl, const Real& dr,
          Budget& budget)
        : f_(f), l_(l), r_(r), dl_(dl), dr_(dr), half_((r - l) / 2), budget_(budget) {
        const double digits = working_digits();
        // Nodes stop where the weight falls below 10^-(2 digits + 20).
        t_max_ = std::asinh(2.0 * std::log(10.0) * (digits + 10.0) / M_PI);
        trim_ = bmp::pow(Real(10), -static_cast<int>(digits) - 8);
    }

    PanelResult run(const Real& tol) {
        const Real pi_half = pi() / 2;
        // Level 0: step 1/2, full node range.
        double step = 0.5;
        const int n0 = static_cast<int>(std::floor(t_max_ / step));
        std::vector<Real> mags(2 * n0 + 1);
        CompensatedSum acc;
        for (int j = -n0; j <= n0; ++j) {
            Complex v = node(j * step, pi_half);
            mags[j + n0] = abs(v);
            acc.add(v);
        }
        Real peak = 0;
        for (const auto& m : mags) peak = std::max(peak, m);
        // Keep the node range where contributions are significant, plus one step.
        int lo = -n0, hi = n0;
        while (lo < 0 && mags[lo + n0] <= trim_ * peak) ++lo;
        while (hi > 0 && mags[hi + n0] <= trim_ * peak) --hi;
        t_lo_ = std::max(-t_max_, (lo - 1) * step);
        t_hi_ = std::min(t_max_, (hi + 1) * step);

        Complex sum = acc.value();
        Complex estimate = sum * Real(step);
        Complex previous = estimate;
        Real last_err = -1;
        PanelResult out;
        for (int level = 1; level <= kMaxLevel; ++level) {
            step /= 2;
            const long first = static_cast<long>(std::ceil(t_lo_ / step));
            const long last = static_cast<long>(std::floor(t_hi_ / step));
            CompensatedSum fresh;
            fresh.add(sum);
            for (long j = first; j <= last; ++j) {
                if (j % 2 == 0) continue;
                fresh.add(node(j * step, pi_half));
            }
            sum = fresh.value();
            estimate = sum * Real(step);
            Real err = abs(estimate - previous);
            previous = estimate;
            out.value = estimate;
            out.error = err;
            if (level >= kMinLevel) {
                if (err <= tol) {
                    out.converged = true;
                    return out;
                }
                // Differences must shrink once the rule is in its asymptotic regime.
                if (last_err >= 0 && err > last_err && level > kMinLevel) break;
            }
            last_err = err;
            if (budget_.evals > budget_.limit) break;
        }
        return out;
    }

private:
    Complex node(double t, const Real& pi_half) {
        ++budget_.evals;
        if (t == 0) {
            Complex v = checked(f_(l_ + half_, dl_ + half_, dr_ + half_));
            return v * (half_ * pi_half);
        }
        const Real tt(std::fabs(t));
        const Real s = pi_half * bmp::sinh(tt);
        const Real e = bmp::exp(-2 * s);
        const Real denom = 1 + e;
        const Real near = 2 * half_ * e / denom;
        if (near == 0) return Complex(0);
        const Real far = 2 * half_ / denom;
        const Real weight = half_ * pi_half * bmp::cosh(tt) * 4 * e / (denom * denom);
        Complex v = t > 0 ? checked(f_(r_ - near, dl_ + far, dr_ + near))
                          : checked(f_(l_ + near, dl_ + near, dr_ + far));
        return v * weight;
    }

    const EndpointIntegrand& f_;
    Real l_, r_, dl_, dr_, half_;
    Budget& budget_;
    double t_max_;
    double t_lo_ = 0, t_hi_ = 0;
    Real trim_;
};

void adaptive(const EndpointIntegrand& f, const Real& l, const Real& r, const Real& dl, const Real& dr,
              const Real& tol, int depth, Budget& budget, QuadratureResult& out) {
    Panel panel(f, l, r, dl, dr, budget);
    PanelResult p = panel.run(tol);
    if (p.converged || depth >= kMaxDepth || budget.evals > budget.limit) {
        out.value += p.value;
        out.error_estimate += p.error;
        if (!p.converged) out.converged = false;
        return;
    }
    const Real m = (l + r) / 2;
    adaptive(f, l, m, dl, dr + (r - m), tol / 2, depth + 1, budget, out);
    adaptive(f, m, r, dl + (m - l), dr, tol / 2, depth + 1, budget, out);
}

Real tolerance_for(const PrecisionConfig& cfg, const Real& magnitude) {
    return std::max(Real(cfg.target_abs_tol), Real(cfg.target_rel_tol) * magnitude);
}

}  // namespace

QuadratureResult integrate_finite(const EndpointIntegrand& f, const Real& a, const Real& b,
                                  const PrecisionConfig& cfg) {
    cfg.validate();
    PrecisionScope scope(cfg.working_digits);
    if (!(a < b)) throw DomainError("integration interval must satisfy a < b");
    Budget budget{0, cfg.max_evals};
    // A first pass fixes the scale for the relative tolerance.
    Panel probe(f, a, b, Real(0), Real(0), budget);
    PanelResult first = probe.run(tolerance_for(cfg, Real(0)));
    QuadratureResult out;
    if (first.converged) {
        out.value = first.value;
        out.error_estimate = first.error;
        out.converged = true;
        out.evals = budget.evals;
        return out;
    }
    const Real tol = tolerance_for(cfg, abs(first.value));
    if (first.error <= tol) {
        out.value = first.value;
        out.error_estimate = first.error;
        out.converged = true;
        out.evals = budget.evals;
        return out;
    }
    out.converged = true;
    const Real m = (a + b) / 2;
    adaptive(f, a, m, Real(0), b - m, tol / 2, 1, budget, out);
    adaptive(f, m, b, m - a, Real(0), tol / 2, 1, budget, out);
    out.evals = budget.evals;
    return out;
}

QuadratureResult integrate_finite(const RealIntegrand& f, const Real& a, const Real& b,
                                  const PrecisionConfig& cfg) {
    EndpointIntegrand g = [&f](const Real& x, const Real&, const Real&) { return f(x); };
    return integrate_finite(g, a, b, cfg);
}

namespace {

Real envelope(const RealIntegrand& f, const Real& T, const Real& width, long& evals) {
    Real e = 0;
    for (int k = 0; k < 4; ++k) {
        Complex v = checked(f(T + width * k / 8));
        ++evals;
        e = std::max(e, abs(v));
    }
    return e;
}

Real find_truncation(const RealIntegrand& f, const Real& a, const PrecisionConfig& cfg, long& evals) {
    const Real goal = Real(cfg.target_abs_tol) / 10;
    Real L = 1;
    Real prev_T = a;
    Real prev_E = envelope(f, a, Real(1) / 2, evals);
    int growing = 0;
    for (int k = 0; k < 40; ++k) {
        const Real T = a + L;
        const Real E = envelope(f, T, L / 2, evals);
        if (E == 0) return T;
        growing = E > prev_E ? growing + 1 : 0;
        if (growing >= 3) throw TailDivergenceError("integrand grows instead of decaying");
        if (E < prev_E) {
            const Real rate = bmp::log(prev_E / E) / (T - prev_T);
            // Tail bound for an envelope decaying at least as fast as e^{-rate x}.
            if (rate > 0 && E / rate <= goal && E <= goal) return T;
        }
        prev_T = T;
        prev_E = E;
        L *= 2;
    }
    throw TailDivergenceError("integrand does not decay exponentially");
}

}  // namespace

QuadratureResult integrate_semi_infinite(const RealIntegrand& f, const Real& a, DecayHint decay,
                                         const PrecisionConfig& cfg, std::optional<Real> truncation) {
    cfg.validate();
    PrecisionScope scope(cfg.working_digits);
    if (decay == DecayHint::power) {
        const Real T = a + 1;
        EndpointIntegrand g = [&f, &T](const Real&, const Real& u, const Real&) -> Complex {
            return f(T / u) * (T / (u * u));
        };
        // Integrability at u = 0 needs u g(u) -> 0.
        const Real g1 = Real("1e-6") * abs(checked(g(Real(0), Real("1e-6"), Real(1))));
        const Real g2 = Real("1e-12") * abs(checked(g(Real(0), Real("1e-12"), Real(1))));
        if (g2 >= g1 && g2 > Real(cfg.target_abs_tol))
            throw TailDivergenceError("integrand does not decay faster than 1/x");
        PrecisionConfig half = cfg.with_tolerance(cfg.target_abs_tol / 2, cfg.target_rel_tol);
        QuadratureResult head = integrate_finite(f, a, T, half);
        QuadratureResult tail = integrate_finite(g, Real(0), Real(1), half);
        QuadratureResult out;
        out.value = head.value + tail.value;
        out.error_estimate = head.error_estimate + tail.error_estimate;
        out.evals = head.evals + tail.evals + 2;
        out.converged = head.converged && tail.converged;
        return out;
    }
    long evals = 0;
    const Real T = truncation ? *truncation : find_truncation(f, a, cfg, evals);
    if (!(T > a)) throw DomainError("truncation point must exceed the lower limit");
    // The integrand beyond the truncation point must stay below the tolerance.
    const Real beyond = abs(checked(f(2 * T - a)));
    ++evals;
    if (beyond > Real(cfg.target_abs_tol) && beyond > abs(checked(f(T))))
        throw TailDivergenceError("integrand grows beyond the truncation point");
    QuadratureResult out = integrate_finite(f, a, T, cfg);
    out.evals += evals + 1;
    return out;
}

namespace {

QuadratureResult iterate(const PointIntegrand& f, const std::vector<Axis>& axes, std::vector<Real>& point,
                         std::size_t level, const PrecisionConfig& cfg) {
    const Axis& axis = axes[level];
    const PrecisionConfig inner = cfg.tightened(1);
    long evals = 0;
    bool inner_ok = true;
    RealIntegrand g = [&](const Real& x) -> Complex {
        point[level] = x;
        if (level + 1 == axes.size()) {
            ++evals;
            return f(std::span<const Real>(point));
        }
        QuadratureResult r = iterate(f, axes, point, level + 1, inner);
        evals += r.evals;
        inner_ok = inner_ok && r.converged;
        return r.value;
    };
    QuadratureResult out = axis.upper ? integrate_finite(g, axis.lower, *axis.upper, cfg)
                                      : integrate_semi_infinite(g, axis.lower, axis.decay, cfg);
    out.evals = evals;
    out.converged = out.converged && inner_ok;
    return out;
}

}  // namespace

QuadratureResult integrate_iterated(const PointIntegrand& f, const std::vector<Axis>& axes,
                                    const PrecisionConfig& cfg) {
    cfg.validate();
    if (axes.size() < 2 || axes.size() > 3) throw ConfigError("iterated integration needs 2 or 3 axes");
    PrecisionScope scope(cfg.working_digits);
    std::vector<Real> point(axes.size());
    return iterate(f, axes, point, 0, cfg);
}

QuadratureResult mellin_barnes_line(const std::function<Complex(const Complex&)>& g, const Real& c,
                                    const PrecisionConfig& cfg, bool conjugate_symmetric) {
    cfg.validate();
    PrecisionScope scope(cfg.working_digits);
    const Real two_pi = 2 * pi();
    const PrecisionConfig half = cfg.with_tolerance(cfg.target_abs_tol * M_PI, cfg.target_rel_tol);
    RealIntegrand upper = [&](const Real& t) { return g(Complex(c, t)); };
    QuadratureResult up = integrate_semi_infinite(upper, Real(0), DecayHint::exponential, half);
    if (conjugate_symmetric) {
        QuadratureResult out = up;
        out.value = Complex(Real(up.value.real() / pi()), Real(0));
        out.error_estimate = up.error_estimate / pi();
        return out;
    }
    RealIntegrand lower = [&](const Real& t) { return g(Complex(c, Real(-t))); };
    QuadratureResult down = integrate_semi_infinite(lower, Real(0), DecayHint::exponential, half);
    QuadratureResult out;
    out.value = (up.value + down.value) / two_pi;
    out.error_estimate = (up.error_estimate + down.error_estimate) / two_pi;
    out.evals = up.evals + down.evals;
    out.converged = up.converged && down.converged;
    return out;
}

}  // namespace ximod
