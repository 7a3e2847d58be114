#pragma once

#include <gmpxx.h>

#include <string>

namespace kolmo {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact value a + i b with rational parts.
struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

    bool is_real() const { return sgn(im) == 0; }

    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRational operator*(const Rational& s, const GaussRational& a) {
        return {s * a.re, s * a.im};
    }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

Rational make_rational(long num, long den = 1);

Integer factorial(unsigned n);
Integer binomial(long n, long k);  // 0 when k < 0 or k > n

/// "num/den" in lowest terms, the denominator always present.
std::string to_fraction_string(const Rational& q);
Rational parse_fraction(const std::string& text);

}  // namespace kolmo
