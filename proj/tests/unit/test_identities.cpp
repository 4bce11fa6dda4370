#include <doctest.h>

#include "ximod/classical.hpp"
#include "ximod/errors.hpp"
#include "ximod/generalized.hpp"
#include "ximod/identities.hpp"

using namespace ximod;

namespace {

IdentityCase make_case(const std::string& id, double alpha, unsigned digits = 30) {
    IdentityCase c;
    c.name = parse_identity_name(id);
    c.alpha = Real(alpha);
    c.cfg = PrecisionConfig::with_digits(digits);
    return c;
}

double rel(const Complex& a, const Complex& b) {
    return (abs(a - b) / std::max(abs(a), abs(b))).convert_to<double>();
}

}  // namespace

TEST_CASE("registry lists the nine relations and rejects unknown ids") {
    CHECK(identity_registry().size() == 9);
    CHECK(parse_identity_name("bessel-sum") == IdentityName::bessel_sum);
    CHECK_THROWS_AS(parse_identity_name("nope"), DomainError);
}

TEST_CASE("envelope helpers") {
    PrecisionScope scope(30);
    // 1/(e^y - 1) - 1/y: series branch against the direct branch with guard digits.
    for (double y : {1e-12, 1e-3, 0.5, 0.99}) {
        const Real yy(y);
        Real direct;
        {
            PrecisionScope hi(80);
            const Real y80(y);
            direct = to_working(Real(1 / boost::multiprecision::expm1(y80) - 1 / y80));
        }
        CHECK(boost::multiprecision::abs(detail::bose_minus_pole(yy) - direct) < Real(1e-28));
    }
    CHECK(detail::log_gamma_envelope(0.5, 40) < -60);
    const Real T = detail::envelope_truncation([](double t) { return -t; }, 1e-20);
    CHECK(T.convert_to<double>() == doctest::Approx(49).epsilon(0.05));
}

TEST_CASE("hardy-theta at alpha = 1 and the series symmetry") {
    auto r = verify_identity(make_case("hardy-theta", 1));
    REQUIRE(r.sides.size() == 3);
    CHECK(r.pass);
    CHECK(r.rel_residual < Real(1e-20));
    PrecisionScope scope(30);
    Real theta(0);
    for (int n = 1; n < 10; ++n) theta += boost::multiprecision::exp(-pi() * n * n);
    CHECK(abs(r.sides[0].value - Complex(Real(Real(0.5) - theta))) < Real(1e-28));
    // α and 1/α series sides at α = 3 coincide without the integral.
    auto j = verify_identity(make_case("jacobi-theta", 3));
    CHECK(j.sides.size() == 2);
    CHECK(j.rel_residual < Real(1e-25));
}

TEST_CASE("generalized-theta reduces to hardy-theta at w = 0") {
    auto g = verify_identity(make_case("generalized-theta", 2));
    auto h = verify_identity(make_case("hardy-theta", 2));
    for (std::size_t i = 0; i < 3; ++i) CHECK(rel(g.sides[i].value, h.sides[i].value) < 1e-25);
    auto c = make_case("generalized-theta", 2, 20);
    {
        PrecisionScope scope(20);
        c.w = parse_complex("0.2+0.3i");
    }
    auto r = verify_identity(c);
    CHECK(r.pass);
    CHECK(r.sides[0].value.imag() != 0);
}

TEST_CASE("ramanujan-1915 and ramanujan-lost") {
    auto c = make_case("ramanujan-1915", 1, 20);
    c.n = Real(0.5);
    auto r = verify_identity(c);
    CHECK(r.pass);
    CHECK(r.rel_residual < Real(1e-12));
    c.n = Real(-1);
    CHECK_THROWS_AS(verify_identity(c), DomainError);

    auto one = verify_identity(make_case("ramanujan-lost", 1));
    CHECK(one.sides[0].value == one.sides[1].value);
    auto two = verify_identity(make_case("ramanujan-lost", 2));
    CHECK(two.pass);
    CHECK(two.rel_residual < Real(1e-20));
}

TEST_CASE("hurwitz-modular and its domain") {
    auto c = make_case("hurwitz-modular", 2, 20);
    c.z = Complex(0.25);
    auto r = verify_identity(c);
    CHECK(r.pass);
    c.z = Complex(0);
    CHECK_THROWS_AS(verify_identity(c), DomainError);
    c.z = Complex(1.5);
    CHECK_THROWS_AS(verify_identity(c), DomainError);
    c.alpha = Real(-1);
    c.z = Complex(0.5);
    CHECK_THROWS_AS(verify_identity(c), DomainError);
}

TEST_CASE("generalized-ramanujan at w = 0 agrees with ramanujan-lost") {
    auto c = make_case("generalized-ramanujan", 2, 20);
    c.series_terms = 60;
    auto g = verify_identity(c);
    auto l = verify_identity(make_case("ramanujan-lost", 2, 20));
    CHECK(g.pass);
    CHECK(rel(g.sides[2].value, l.sides[2].value) < 1e-12);
    CHECK(rel(g.sides[0].value, l.sides[0].value) < 1e-6);
    CHECK(g.diagnostics.count("hypothesis_note") == 1);
}

TEST_CASE("full-modular at w = 0 matches hurwitz-modular side for side") {
    auto c = make_case("full-modular", 2, 20);
    c.z = Complex(0.5);
    c.series_terms = 30;
    auto f = verify_identity(c);
    auto h = verify_identity([&] {
        auto d = make_case("hurwitz-modular", 2, 20);
        d.z = Complex(0.5);
        return d;
    }());
    CHECK(rel(f.sides[2].value, h.sides[2].value) < 1e-12);
    CHECK(rel(f.sides[0].value, h.sides[0].value) < 1e-5);
    CHECK(rel(f.sides[1].value, h.sides[1].value) < 1e-5);
    c.z = Complex(-0.5);
    CHECK_THROWS_AS(verify_identity(c), DomainError);
}

TEST_CASE("divisor Dirichlet series against the zeta product") {
    auto cfg = PrecisionConfig::with_digits(20);
    PrecisionScope scope(20);
    SeriesResult s = divisor_dirichlet_series(Complex(3), Complex(0.5), 2000, cfg);
    const Complex exact = zeta_complex(Complex(3)) * zeta_complex(Complex(3.5));
    CHECK(rel(s.value, exact) < 1e-7);
    CHECK(abs(s.value - exact) < 10 * s.tail_estimate);
    CHECK_THROWS_AS(divisor_dirichlet_series(Complex(1), Complex(0.5), 100, cfg), DomainError);
}

TEST_CASE("asymptotic expansion pieces") {
    PrecisionScope scope(30);
    for (double a : {8.0, 20.0}) {
        const Real al(a);
        const Complex oloa = -2 * boost::multiprecision::pow(pi(), Real(1.5)) * boost::multiprecision::sqrt(al) *
                             (euler_gamma() - boost::multiprecision::log(2 * pi() * al)) / (2 * al);
        CHECK(rel(asymptotic_leading(Complex(0), Complex(0), al), oloa) < 1e-25);
        CHECK(rel(asymptotic_expansion(Complex(0), Complex(0), 1, al), oloa) < 1e-25);
    }
    // w = 0: the ₁F₁ factors and A_w drop out.
    const Real al(10);
    const Complex z(0.5);
    const Complex g = gamma_complex(z + 1) / (pow(Real(2), z - 1) * pow(pi(), (z - 3) / 2));
    Complex expect = -g * (zeta_complex(z + 1) / (2 * pow(al, (z + 1) / 2)) + zeta_complex(z) / (z * pow(al, (1 - z) / 2)));
    expect = expect - pow(al, (1 - z) / 2) / (pow(Real(2), z - 2) * pow(pi(), (z - 3) / 2)) * Real(-1) *
                          gamma_complex(z + 2) / boost::multiprecision::pow(2 * pi() * al, 2) *
                          zeta_complex(Complex(2)) * zeta_complex(z + 2);
    CHECK(rel(asymptotic_expansion(z, Complex(0), 2, al), expect) < 1e-25);
}

TEST_CASE("scan preconditions") {
    auto cfg = PrecisionConfig::with_digits(20);
    std::vector<Real> two = {Real(8), Real(16)};
    CHECK_THROWS_AS(scan_asymptotic(Complex(0.5), Complex(0), 1, two, cfg), ConfigError);
    std::vector<Real> low = {Real(2), Real(8), Real(16)};
    CHECK_THROWS_AS(scan_asymptotic(Complex(0.5), Complex(0), 1, low, cfg), DomainError);
    std::vector<Real> bad = {Real(8), Real(8), Real(16)};
    CHECK_THROWS_AS(scan_asymptotic(Complex(0.5), Complex(0), 1, bad, cfg), ConfigError);
}

TEST_CASE("scan defects decrease and the report round-trips") {
    auto cfg = PrecisionConfig::with_digits(20);
    std::vector<Real> grid = {Real(8), Real(16), Real(32)};
    auto r = scan_asymptotic(Complex(0.5), Complex(0), 2, grid, cfg);
    REQUIRE(r.defects.size() == 3);
    CHECK(r.defects[1] < r.defects[0]);
    CHECK(r.defects[2] < r.defects[1]);
    CHECK(r.predicted_slope == doctest::Approx(-4.25));
    const std::string csv = emit_report(r, ReportFormat::csv);
    CHECK(csv.rfind("alpha,integral,expansion,defect,slope_fit\n", 0) == 0);
    const std::string js = emit_report(r, ReportFormat::json);
    CHECK(emit_report(parse_scan_report(js), ReportFormat::json) == js);
}

TEST_CASE("residual report schema and round-trip") {
    auto r = verify_identity(make_case("hardy-theta", 2));
    const std::string js = emit_report(r, ReportFormat::json);
    for (const char* key : {"\"identity\"", "\"params\"", "\"sides\"", "\"residuals\"", "\"rel_residual\"", "\"pass\"",
                            "\"diagnostics\""})
        CHECK(js.find(key) != std::string::npos);
    const ResidualReport back = parse_residual_report(js);
    CHECK(emit_report(back, ReportFormat::json) == js);
    CHECK(back.sides.size() == 3);
    CHECK(back.pass == r.pass);
    CHECK(emit_report(verify_identity(make_case("hardy-theta", 2)), ReportFormat::json) == js);
    const std::string csv = emit_report(r, ReportFormat::csv);
    CHECK(csv.rfind("identity,side,re,im,rel_residual,pass\n", 0) == 0);
    CHECK_THROWS_AS(parse_residual_report("{\"identity\": 1}"), DomainError);
}
