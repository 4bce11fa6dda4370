#include "ximod/real.hpp"

#include "ximod/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <mutex>
#include <ostream>

namespace ximod {

namespace mp = boost::multiprecision;

namespace {

constexpr int kMaxBernoulli = 400;

// Brent–Harvey tangent numbers; B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1)).
std::vector<std::pair<mp::cpp_int, mp::cpp_int>> exact_bernoulli(int n) {
    std::vector<mp::cpp_int> t(n + 1);
    t[1] = 1;
    for (int k = 2; k <= n; ++k) t[k] = t[k - 1] * (k - 1);
    for (int k = 2; k <= n; ++k)
        for (int j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];

    std::vector<std::pair<mp::cpp_int, mp::cpp_int>> out;
    out.reserve(n);
    for (int k = 1; k <= n; ++k) {
        mp::cpp_int four_k = mp::cpp_int(1) << (2 * k);
        mp::cpp_int num = 2 * k * t[k];
        mp::cpp_int den = four_k * (four_k - 1);
        mp::cpp_int g = gcd(num, den);
        num /= g;
        den /= g;
        if (k % 2 == 0) num = -num;
        out.emplace_back(std::move(num), std::move(den));
    }
    return out;
}

const std::vector<std::pair<mp::cpp_int, mp::cpp_int>>& exact_table() {
    static const auto table = exact_bernoulli(kMaxBernoulli);
    return table;
}

}  // namespace

unsigned working_digits() { return Real::default_precision(); }

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real to_working(const Real& x) {
    Real r(x);
    r.precision(working_digits());
    return r;
}

Real working_epsilon() { return pow(Real(10), -static_cast<int>(working_digits())); }

Real pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Real euler_gamma() {
    Real r;
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
}

Real log2_const() {
    Real r;
    mpfr_const_log2(r.backend().data(), MPFR_RNDN);
    return r;
}

const std::vector<Real>& bernoulli_b2n_table(int count) {
    if (count > kMaxBernoulli)
        throw ConfigError("Bernoulli table request exceeds " + std::to_string(kMaxBernoulli) + " entries");
    static std::mutex mutex;
    static std::map<unsigned, std::vector<Real>> tables;
    const unsigned digits = working_digits();
    std::lock_guard<std::mutex> lock(mutex);
    auto it = tables.find(digits);
    if (it == tables.end()) {
        std::vector<Real> rounded;
        rounded.reserve(kMaxBernoulli);
        for (const auto& [num, den] : exact_table()) rounded.push_back(Real(num.str()) / Real(den.str()));
        it = tables.emplace(digits, std::move(rounded)).first;
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// Complex

Complex& Complex::operator*=(const Complex& o) {
    Real re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    // Smith's algorithm.
    if (boost::multiprecision::abs(o.re_) >= boost::multiprecision::abs(o.im_)) {
        Real r = o.im_ / o.re_;
        Real d = o.re_ + o.im_ * r;
        Real re = (re_ + im_ * r) / d;
        im_ = (im_ - re_ * r) / d;
        re_ = std::move(re);
    } else {
        Real r = o.re_ / o.im_;
        Real d = o.re_ * r + o.im_;
        Real re = (re_ * r + im_) / d;
        im_ = (im_ * r - re_) / d;
        re_ = std::move(re);
    }
    return *this;
}

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.real(), z.imag()); }

Real norm(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

Real arg(const Complex& z) { return boost::multiprecision::atan2(z.imag(), z.real()); }

Complex conj(const Complex& z) { return {z.real(), -z.imag()}; }

Complex exp(const Complex& z) {
    Real m = boost::multiprecision::exp(z.real());
    if (z.imag() == 0) return {m, Real(0)};
    return {m * boost::multiprecision::cos(z.imag()), m * boost::multiprecision::sin(z.imag())};
}

Complex log(const Complex& z) {
    if (z.imag() == 0 && z.real() > 0) return {boost::multiprecision::log(z.real()), Real(0)};
    return {boost::multiprecision::log(abs(z)), arg(z)};
}

Complex sqrt(const Complex& z) {
    if (z.imag() == 0) {
        if (z.real() >= 0) return {boost::multiprecision::sqrt(z.real()), Real(0)};
        return {Real(0), boost::multiprecision::sqrt(-z.real())};
    }
    Real m = abs(z);
    Real a = boost::multiprecision::sqrt((m + boost::multiprecision::abs(z.real())) / 2);
    if (z.real() >= 0) return {a, z.imag() / (2 * a)};
    Real b = z.imag() < 0 ? Real(-a) : a;
    return {boost::multiprecision::abs(z.imag()) / (2 * a), b};
}

Complex pow(const Complex& z, const Complex& p) {
    if (z.imag() == 0 && z.real() > 0) return pow(z.real(), p);
    return exp(p * log(z));
}

Complex pow(const Real& x, const Complex& p) {
    if (p.imag() == 0) return {boost::multiprecision::pow(x, p.real()), Real(0)};
    return exp(p * Real(boost::multiprecision::log(x)));
}

Complex sin(const Complex& z) {
    if (z.imag() == 0) return {boost::multiprecision::sin(z.real()), Real(0)};
    return {boost::multiprecision::sin(z.real()) * boost::multiprecision::cosh(z.imag()),
            boost::multiprecision::cos(z.real()) * boost::multiprecision::sinh(z.imag())};
}

Complex cos(const Complex& z) {
    if (z.imag() == 0) return {boost::multiprecision::cos(z.real()), Real(0)};
    return {boost::multiprecision::cos(z.real()) * boost::multiprecision::cosh(z.imag()),
            -boost::multiprecision::sin(z.real()) * boost::multiprecision::sinh(z.imag())};
}

Complex sinh(const Complex& z) {
    if (z.imag() == 0) return {boost::multiprecision::sinh(z.real()), Real(0)};
    return {boost::multiprecision::sinh(z.real()) * boost::multiprecision::cos(z.imag()),
            boost::multiprecision::cosh(z.real()) * boost::multiprecision::sin(z.imag())};
}

Complex cosh(const Complex& z) {
    if (z.imag() == 0) return {boost::multiprecision::cosh(z.real()), Real(0)};
    return {boost::multiprecision::cosh(z.real()) * boost::multiprecision::cos(z.imag()),
            boost::multiprecision::sinh(z.real()) * boost::multiprecision::sin(z.imag())};
}

Complex to_working(const Complex& z) { return {to_working(z.real()), to_working(z.imag())}; }

bool is_finite(const Complex& z) {
    return boost::multiprecision::isfinite(z.real()) && boost::multiprecision::isfinite(z.imag());
}

// ---------------------------------------------------------------------------
// Text

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

bool looks_numeric(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' || c == '+' || c == '-'))
            return false;
    return true;
}

}  // namespace

Real parse_real(const std::string& text) {
    std::string s = trim(text);
    if (!looks_numeric(s)) throw DomainError("not a real number: '" + text + "'");
    try {
        return Real(s);
    } catch (const std::exception&) {
        throw DomainError("not a real number: '" + text + "'");
    }
}

Complex parse_complex(const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) throw DomainError("empty complex literal");
    if (s.back() != 'i') return {parse_real(s), Real(0)};
    std::string body = s.substr(0, s.size() - 1);
    // Locate the sign that separates the real and imaginary parts.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [&](const std::string& t) -> Real {
        if (t.empty() || t == "+") return Real(1);
        if (t == "-") return Real(-1);
        return parse_real(t);
    };
    if (split == std::string::npos) return {Real(0), imag_of(body)};
    return {parse_real(body.substr(0, split)), imag_of(body.substr(split))};
}

std::string to_decimal(const Real& x, unsigned digits) {
    if (x == 0) return "0";
    return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
    const unsigned d = working_digits();
    os << to_decimal(z.real(), d);
    if (z.imag() != 0) os << (z.imag() < 0 ? " - " : " + ") << to_decimal(boost::multiprecision::abs(z.imag()), d) << "i";
    return os;
}

void CompensatedSum::add(const Complex& x) {
    auto step = [](Real& sum, Real& carry, const Real& v) {
        Real t = sum + v;
        if (boost::multiprecision::abs(sum) >= boost::multiprecision::abs(v))
            carry += (sum - t) + v;
        else
            carry += (v - t) + sum;
        sum = std::move(t);
    };
    Real sr = sum_.real(), sc = carry_.real(), ir = sum_.imag(), ic = carry_.imag();
    step(sr, sc, x.real());
    step(ir, ic, x.imag());
    sum_ = Complex(sr, ir);
    carry_ = Complex(sc, ic);
}

}  // namespace ximod
