#pragma once

// Working-precision scalar types.
//
// Real is an MPFR float whose precision is taken from a process-wide default
// at construction.  PrecisionScope sets that default for a region of code and
// restores it afterwards; every public entry point that accepts a
// PrecisionConfig opens one.  Values keep the precision they were created
// with, so results computed at an elevated precision must be passed through
// to_working() before they escape.

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ximod {

using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

/// Current working precision in decimal digits.
unsigned working_digits();

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

/// Rounds a value (possibly computed at higher precision) to the current
/// working precision.
Real to_working(const Real& x);

/// 10^(-working_digits).
Real working_epsilon();

Real pi();
Real euler_gamma();
Real log2_const();

/// B_2, B_4, ..., B_{2*count} rounded to the current working precision.
/// The exact rational values are computed once; the rounded tables are
/// write-once per precision.
const std::vector<Real>& bernoulli_b2n_table(int count);

class Complex {
public:
    Complex() = default;
    Complex(const Real& re) : re_(re), im_(0) {}  // NOLINT(implicit)
    Complex(const Real& re, const Real& im) : re_(re), im_(im) {}
    Complex(double re) : re_(re), im_(0) {}  // NOLINT(implicit)
    Complex(int re) : re_(re), im_(0) {}  // NOLINT(implicit)
    Complex(double re, double im) : re_(re), im_(im) {}

    const Real& real() const { return re_; }
    const Real& imag() const { return im_; }

    Complex& operator+=(const Complex& o) { re_ += o.re_; im_ += o.im_; return *this; }
    Complex& operator-=(const Complex& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& r) { re_ *= r; im_ *= r; return *this; }
    Complex& operator/=(const Real& r) { re_ /= r; im_ /= r; return *this; }

    Complex operator-() const { return {-re_, -im_}; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const Real& r) { return a *= r; }
    friend Complex operator*(const Real& r, Complex a) { return a *= r; }
    friend Complex operator/(Complex a, const Real& r) { return a /= r; }
    friend Complex operator*(Complex a, int r) { return a *= Real(r); }
    friend Complex operator*(int r, Complex a) { return a *= Real(r); }
    friend Complex operator/(Complex a, int r) { return a /= Real(r); }
    friend Complex operator*(Complex a, double r) { return a *= Real(r); }
    friend Complex operator*(double r, Complex a) { return a *= Real(r); }
    friend Complex operator/(Complex a, double r) { return a /= Real(r); }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

private:
    Real re_{0};
    Real im_{0};
};

inline Complex imag_unit() { return Complex(0.0, 1.0); }

Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);  // principal branch
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, const Complex& p);  // principal branch, z != 0
Complex pow(const Real& x, const Complex& p);     // x > 0, e^{p log x}
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex sinh(const Complex& z);
Complex cosh(const Complex& z);
Complex to_working(const Complex& z);
bool is_finite(const Complex& z);

/// Parses "1.5", "-2i", "0.2+0.3i", "1e-3-4.5i".
Complex parse_complex(const std::string& text);
Real parse_real(const std::string& text);

/// Decimal rendering with the given number of significant digits
/// (scientific notation, deterministic).
std::string to_decimal(const Real& x, unsigned digits);

std::ostream& operator<<(std::ostream& os, const Complex& z);

/// Neumaier-compensated accumulator; summation order is the call order.
class CompensatedSum {
public:
    void add(const Complex& x);
    Complex value() const { return sum_ + carry_; }

private:
    Complex sum_{0};
    Complex carry_{0};
};

}  // namespace ximod
