#pragma once

// Legendre polynomials P_n on [-1, 1], their shifted versions on [0, 1], the
// integral family I_n with (2n+1) I_n = P_{n+1} - P_{n-1}, and the extension
// of both families to every integer index through P_{-n-1} = i P_n.

#include <kolmo/poly.hpp>

#include <complex>
#include <vector>

namespace kolmo::legendre {

using Complex = std::complex<double>;

/// P_n(x) for n in Z by upward three-term recurrence. For n <= -1 the value is
/// purely imaginary. Throws DomainError when |x| > 1.
Complex eval_P(int n, double x);

/// I_n(x) for n in Z. For n >= 1 this is the integral of P_n over [-1, x];
/// I_0(x) = x - i is not the integral of P_0.
Complex eval_I(int n, double x);

/// Real-valued fast paths for n >= 0 (P) and n >= 1 (I).
double legendre_p(int n, double x);
double legendre_integral(int n, double x);

/// Shifted Legendre polynomial Q_n(t) = P_n(2t - 1), t in [0, 1].
double eval_Q(int n, double t);

/// Integral of Q_n over [0, t]; equals t for n = 0 and I_n(2t-1)/2 otherwise.
double shifted_integral(int n, double t);

/// Exact rational recurrence values at a rational point (no polynomial
/// expansion, so no degree cap). n >= 0 for P, n >= 1 for I.
Rational exact_P_at(int n, const Rational& x);
Rational exact_I_at(int n, const Rational& x);

/// Memoized exact polynomials P_n and I_n for |index| up to a fixed cap.
/// The table is filled once at construction and is read-only afterwards.
class ExactTable {
public:
    static constexpr int kDefaultMaxDegree = 64;

    explicit ExactTable(int max_degree = kDefaultMaxDegree);

    int max_degree() const { return max_degree_; }

    /// P_n for -max_degree-1 <= n <= max_degree.
    const GaussRationalPoly& P(int n) const;
    /// I_n for -max_degree <= n <= max_degree-1 (I_n has degree n+1).
    const GaussRationalPoly& I(int n) const;

    /// Process-wide table with the default cap.
    static const ExactTable& shared();

private:
    int max_degree_;
    std::vector<GaussRationalPoly> p_;  // index n + max_degree + 1
    std::vector<GaussRationalPoly> i_;  // index n + max_degree
};

GaussRationalPoly exact_P(int n);
GaussRationalPoly exact_I(int n);

/// (n/2) I_n, which is the Jacobi polynomial P_{n+1}^{(-1,-1)}. n >= 1.
RationalPoly jacobi_from_I(int n);

/// Main term of the Darboux asymptotic formula for P_n^{(alpha, beta)}(cos t).
/// Only the parameter pairs (0, 0) and (-1, -1) are supported.
struct DarbouxApproximant {
    static constexpr double kDefaultEdgeGuard = 1e-3;

    Rational alpha;
    Rational beta;
    int n;
    double theta_min;
    double theta_max;

    DarbouxApproximant(Rational alpha, Rational beta, int n, double theta_min, double theta_max,
                       double edge_guard = kDefaultEdgeGuard);

    /// Approximates P_n^{(0,0)} = P_n.
    static DarbouxApproximant legendre(int n, double theta_min, double theta_max);
    /// Approximates P_n^{(-1,-1)} = ((n-1)/2) I_{n-1}.
    static DarbouxApproximant integral(int n, double theta_min, double theta_max);

    /// Exact value of the approximated polynomial at cos(theta).
    double exact(double theta) const;
};

double darboux_approx(const DarbouxApproximant& apx, double theta);

/// max over an equispaced theta grid of n^{3/2} |exact - main term|.
double darboux_scaled_error(const DarbouxApproximant& apx, int theta_points);

}  // namespace kolmo::legendre
