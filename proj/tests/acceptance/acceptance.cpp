#include "ximod/classical.hpp"
#include "ximod/errors.hpp"
#include "ximod/generalized.hpp"
#include "ximod/identities.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ximod;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [fail: " << what << "]";
        }
    }
};

std::vector<std::string> g_reports;

double to_d(const Real& x) { return x.convert_to<double>(); }

double rel(const Complex& a, const Complex& b) {
    const Real scale = std::max(abs(a), abs(b));
    if (scale == 0) return 0;
    return to_d(abs(a - b) / scale);
}

Complex cx(const std::string& text, unsigned digits) {
    PrecisionScope scope(digits);
    return parse_complex(text);
}

Real rl(const std::string& text, unsigned digits) {
    PrecisionScope scope(digits);
    return Real(text);
}

IdentityCase make(const std::string& id, const std::string& alpha, unsigned digits, double tol) {
    IdentityCase c;
    c.name = parse_identity_name(id);
    c.cfg = PrecisionConfig::with_digits(digits);
    c.alpha = rl(alpha, digits);
    c.tolerance = tol;
    return c;
}

ResidualReport run(const IdentityCase& c) {
    ResidualReport r = verify_identity(c);
    g_reports.push_back(emit_report(r, ReportFormat::json));
    return r;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion1() {
    Outcome o;
    for (const char* a : {"0.5", "1", "2", "3"}) {
        const auto t0 = std::chrono::steady_clock::now();
        const ResidualReport r = run(make("hardy-theta", a, 30, 1e-10));
        const double secs = seconds_since(t0);
        o.detail << " alpha=" << a << " rel=" << sci(to_d(r.rel_residual)) << " t=" << sci(secs) << "s";
        o.require(r.pass && r.sides.size() == 3, std::string("residual at alpha=") + a);
        o.require(secs < 60, std::string("runtime at alpha=") + a);
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (const char* a : {"1", "2"}) {
        for (const char* w : {"0.5", "0.2+0.3i"}) {
            IdentityCase c = make("generalized-theta", a, 20, 1e-8);
            c.w = cx(w, 20);
            const ResidualReport r = run(c);
            o.detail << " (" << a << "," << w << ") rel=" << sci(to_d(r.rel_residual));
            o.require(r.pass && r.sides.size() == 3, std::string("alpha=") + a + " w=" + w);
        }
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    for (const char* n : {"0", "0.25", "0.5"}) {
        IdentityCase c = make("ramanujan-1915", "1", 20, 1e-6);
        c.n = rl(n, 20);
        const ResidualReport r = run(c);
        o.detail << " n=" << n << " rel=" << sci(to_d(r.rel_residual));
        o.require(r.pass, std::string("n=") + n);
    }
    return o;
}

std::vector<ResidualReport> g_lost;

Outcome criterion4() {
    Outcome o;
    for (const char* a : {"1", "2", "5"}) {
        const ResidualReport r = run(make("ramanujan-lost", a, 20, 1e-8));
        g_lost.push_back(r);
        o.detail << " lost(" << a << ") rel=" << sci(to_d(r.rel_residual));
        o.require(r.pass && r.sides.size() == 3, std::string("ramanujan-lost alpha=") + a);
        for (const char* z : {"0.5", "-0.5", "0.25"}) {
            IdentityCase c = make("hurwitz-modular", a, 20, 1e-8);
            c.z = cx(z, 20);
            const ResidualReport h = run(c);
            o.detail << " hurwitz(" << a << "," << z << ") rel=" << sci(to_d(h.rel_residual));
            o.require(h.pass && h.sides.size() == 3, std::string("hurwitz-modular alpha=") + a + " z=" + z);
        }
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    for (const char* a : {"1", "2"}) {
        for (const char* w : {"0.4", "0.8"}) {
            IdentityCase c = make("generalized-ramanujan", a, 20, 1e-3);
            c.w = cx(w, 20);
            c.series_terms = 200;
            const ResidualReport r = run(c);
            o.detail << " (" << a << "," << w << ") rel=" << sci(to_d(r.rel_residual));
            const auto it = r.diagnostics.find("laurent_consistent.rel_residual");
            if (it != r.diagnostics.end()) o.detail << " laurent-consistent=" << it->second;
            o.require(r.pass, std::string("alpha=") + a + " w=" + w);
        }
    }
    // w = 0 against the ramanujan-lost values.
    const char* alphas[] = {"1", "2", "5"};
    for (std::size_t i = 0; i < 3; ++i) {
        IdentityCase c = make("generalized-ramanujan", alphas[i], 20, 1e-3);
        c.series_terms = 200;
        const ResidualReport r = run(c);
        double worst = 0;
        for (std::size_t k = 0; k < 3; ++k) worst = std::max(worst, rel(r.sides[k].value, g_lost[i].sides[k].value));
        o.detail << " w=0 alpha=" << alphas[i] << " vs lost " << sci(worst);
        o.require(worst <= 1e-6, std::string("w=0 limit at alpha=") + alphas[i]);
    }
    return o;
}

Outcome criterion6() {
    Outcome o;
    IdentityCase c = make("full-modular", "2", 20, 1e-4);
    c.z = cx("0.5", 20);
    c.w = cx("0.3", 20);
    c.series_terms = 200;
    const ResidualReport r = run(c);
    o.detail << " rel=" << sci(to_d(r.rel_residual));
    o.require(r.pass && r.sides.size() == 3, "three-way agreement");
    return o;
}

Outcome criterion7() {
    Outcome o;
    const unsigned d = 20;
    const auto cfg = PrecisionConfig::with_digits(d);
    PrecisionScope scope(d);
    for (const char* a : {"1.5", "2", "4"}) {
        for (const char* w : {"0", "0.3", "0.6"}) {
            const Real av(a);
            const Complex wv = parse_complex(w);
            const Complex integral = psi_w_integral(av, wv, cfg);
            const Complex laurent = psi_w_laurent(Real(av - 1), wv, cfg);
            const double diff = to_d(abs(integral - laurent));
            o.detail << " (" << a << "," << w << ") " << sci(diff);
            o.require(diff <= 1e-5, std::string("a=") + a + " w=" + w);
        }
    }
    return o;
}

Outcome criterion8() {
    Outcome o;
    const unsigned d = 30;
    const auto cfg = PrecisionConfig::with_digits(d);
    PrecisionScope scope(d);
    for (const char* s : {"2.5", "3+1i"}) {
        for (const char* a : {"0.3", "0.75"}) {
            const Complex sv = parse_complex(s);
            const Real av(a);
            const Complex w(Real("0.4"), Real("0.2"));
            const double r = rel(zeta_w_direct(sv, av, w, cfg), zeta_w_direct(sv, Real(2 - av), w, cfg));
            o.detail << " sym(" << s << "," << a << ") " << sci(r);
            o.require(r <= 1e-8, std::string("symmetry s=") + s + " a=" + a);
        }
    }
    const Complex s(Real("2.5"));
    const Real a("1.5");
    const Complex hz = hurwitz_zeta(s, a);
    std::vector<double> ks;
    for (const char* w : {"0.1", "0.05", "0.025"}) {
        const Real wv(w);
        const double defect = to_d(abs(zeta_w_direct(s, a, Complex(wv), cfg) - hz));
        const double k = defect / to_d(wv * wv);
        ks.push_back(k);
        o.detail << " K(" << w << ")=" << sci(k);
    }
    const auto [lo, hi] = std::minmax_element(ks.begin(), ks.end());
    o.require(*lo > 0 && (*hi - *lo) / *hi <= 0.05, "fitted K not stable to 5%");
    return o;
}

Outcome criterion9() {
    Outcome o;
    const unsigned d = 20;
    const auto cfg = PrecisionConfig::with_digits(d);
    std::vector<Real> grid;
    {
        PrecisionScope scope(d);
        for (int a : {8, 16, 32, 64}) grid.push_back(Real(a));
    }
    struct Row {
        const char* z;
        long m;
    };
    for (const Row& row : {Row{"0.5", 1}, Row{"0.5", 2}, Row{"0", 1}}) {
        for (const char* w : {"0", "0.3"}) {
            const AsymptoticScanReport r = scan_asymptotic(cx(row.z, d), cx(w, d), row.m, grid, cfg);
            g_reports.push_back(emit_report(r, ReportFormat::csv));
            bool decreasing = true;
            for (std::size_t i = 1; i < r.defects.size(); ++i) decreasing = decreasing && r.defects[i] < r.defects[i - 1];
            o.detail << " (z=" << row.z << ",m=" << row.m << ",w=" << w << ") slope=" << r.fitted_slope
                     << " predicted=" << r.predicted_slope;
            o.require(std::abs(r.fitted_slope - r.predicted_slope) <= 0.3,
                      std::string("slope z=") + row.z + " m=" + std::to_string(row.m) + " w=" + w);
            o.require(decreasing, std::string("monotone defects z=") + row.z + " w=" + w);
        }
    }
    PrecisionScope scope(d + 10);
    double worst = 0;
    for (int a : {8, 16, 32, 64}) {
        const Real al(a);
        const Complex oloa = -2 * boost::multiprecision::pow(pi(), Real(1.5)) * boost::multiprecision::sqrt(al) *
                             (euler_gamma() - boost::multiprecision::log(2 * pi() * al)) / (2 * al);
        worst = std::max(worst, rel(asymptotic_leading(Complex(0), Complex(0), al), oloa));
    }
    o.detail << " oloa-leading " << sci(worst);
    o.require(worst <= 1e-6, "leading term vs Oloa bracket");
    return o;
}

Outcome criterion10() {
    Outcome o;
    const unsigned d = 30;
    const auto cfg = PrecisionConfig::with_digits(d);
    {
        PrecisionScope scope(d);
        double worst = 0;
        for (const char* z : {"0.3", "0.5"}) {
            for (int x : {1, 2, 5}) {
                const Complex zv = parse_complex(z);
                const Real xv(x);
                worst = std::max(worst, rel(k1_bessel(zv, Complex(0), xv, cfg), xv * bessel_k(zv, xv)));
            }
        }
        o.detail << " reduction " << sci(worst);
        o.require(worst <= 1e-10, "1K reduction to x K_z(x)");
    }
    IdentityCase c = make("bessel-sum", "1", 20, 1e-4);
    c.z = cx("0.5", 20);
    c.w = cx("0.3", 20);
    const ResidualReport r = run(c);
    o.detail << " bessel-sum rel=" << sci(to_d(r.rel_residual));
    o.require(r.pass, "bessel-sum agreement");
    return o;
}

Outcome criterion11() {
    Outcome o;
    const unsigned d = 20;
    const auto cfg = PrecisionConfig::with_digits(d);
    PrecisionScope scope(d);
    const SeriesResult s = divisor_dirichlet_series(Complex(3), Complex(Real("0.5")), 20000, cfg);
    const Complex exact = zeta_complex(Complex(3)) * zeta_complex(Complex(Real("3.5")));
    const double r = rel(s.value, exact);
    o.detail << " rel=" << sci(r);
    o.require(r <= 1e-8, "divisor series vs zeta product");
    return o;
}

Outcome criterion12() {
    Outcome o;
    std::vector<std::string> again;
    again.push_back(emit_report(verify_identity(make("hardy-theta", "0.5", 30, 1e-10)), ReportFormat::json));
    again.push_back(emit_report(verify_identity(make("hardy-theta", "1", 30, 1e-10)), ReportFormat::json));
    {
        IdentityCase c = make("generalized-theta", "1", 20, 1e-8);
        c.w = cx("0.5", 20);
        again.push_back(emit_report(verify_identity(c), ReportFormat::json));
    }
    const std::size_t earlier[] = {0, 1, 4};
    for (std::size_t i = 0; i < again.size(); ++i)
        o.require(again[i] == g_reports.at(earlier[i]), "report " + std::to_string(i));
    const auto cfg = PrecisionConfig::with_digits(20);
    std::vector<Real> grid;
    {
        PrecisionScope scope(20);
        for (int a : {8, 16, 32, 64}) grid.push_back(Real(a));
    }
    const auto scan = [&] {
        return emit_report(scan_asymptotic(cx("0", 20), cx("0", 20), 1, grid, cfg), ReportFormat::csv);
    };
    const std::string first = scan();
    o.require(first == scan(), "scan csv");
    o.detail << " compared " << again.size() + 1 << " reports";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3},   {4, criterion4},   {5, criterion5},   {6, criterion6},
        {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}, {11, criterion11}, {12, criterion12},
    };
    int failures = 0;
    for (const auto& [id, body] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        if (!o.pass) ++failures;
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << sci(seconds_since(t0))
                  << " s)" << o.detail.str() << std::endl;
    }
    std::cout << failures << " of " << criteria.size() << " criteria failed" << std::endl;
    return failures == 0 ? 0 : 1;
}
