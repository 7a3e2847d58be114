#pragma once

#include <kolmo/rational.hpp>

#include <vector>

namespace kolmo {

/// Dense polynomial with rational coefficients in ascending degree.
/// Trailing zero coefficients are stripped, so the zero polynomial has no
/// coefficients and degree -1.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs);

    static RationalPoly constant(const Rational& c);
    static RationalPoly monomial(unsigned degree, const Rational& c = 1);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int k) const;

    Rational operator()(const Rational& x) const;
    double eval(double x) const;

    /// p(-x)
    RationalPoly reflected() const;
    /// x * p(x)
    RationalPoly times_x() const;
    /// Definite integral over [-1, 1].
    Rational integral_sym() const;

    RationalPoly& operator+=(const RationalPoly& o);
    RationalPoly& operator-=(const RationalPoly& o);
    RationalPoly& operator*=(const Rational& s);

    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(const Rational& s, RationalPoly a) { return a *= s; }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    void normalize();
    std::vector<Rational> coeffs_;
};

/// re(x) + i im(x). Every polynomial in this library is purely real or
/// purely imaginary, but products of two of them need both parts.
struct GaussRationalPoly {
    RationalPoly re;
    RationalPoly im;

    bool is_real() const { return im.is_zero(); }
    bool is_imaginary() const { return re.is_zero(); }
    int degree() const { return std::max(re.degree(), im.degree()); }

    GaussRational operator()(const Rational& x) const { return {re(x), im(x)}; }
    GaussRationalPoly reflected() const { return {re.reflected(), im.reflected()}; }
    GaussRationalPoly times_x() const { return {re.times_x(), im.times_x()}; }
    GaussRational integral_sym() const { return {re.integral_sym(), im.integral_sym()}; }
    /// Multiplication by the imaginary unit.
    GaussRationalPoly times_i() const;

    friend GaussRationalPoly operator+(const GaussRationalPoly& a, const GaussRationalPoly& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRationalPoly operator-(const GaussRationalPoly& a, const GaussRationalPoly& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRationalPoly operator*(const Rational& s, const GaussRationalPoly& a) {
        return {s * a.re, s * a.im};
    }
    friend GaussRationalPoly operator*(const GaussRationalPoly& a, const GaussRationalPoly& b);
    friend bool operator==(const GaussRationalPoly& a, const GaussRationalPoly& b) {
        return a.re == b.re && a.im == b.im;
    }
};

}  // namespace kolmo
