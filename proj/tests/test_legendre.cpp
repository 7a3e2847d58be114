#include <doctest.h>

#include <kolmo/errors.hpp>
#include <kolmo/legendre.hpp>

#include <cmath>
#include <functional>
#include <numbers>

using namespace kolmo;
using namespace kolmo::legendre;

namespace {

// Explicit sum: P_n(x) = 2^{-n} sum_k (-1)^k C(n,k) C(2n-2k,n) x^{n-2k}.
RationalPoly legendre_by_sum(int n) {
    std::vector<Rational> c(static_cast<std::size_t>(n + 1));
    const Rational scale = Rational(1) / Rational(Integer(1) << n);
    for (int k = 0; 2 * k <= n; ++k) {
        Rational term = scale * Rational(binomial(n, k) * binomial(2 * n - 2 * k, n));
        if (k % 2) term = -term;
        c[static_cast<std::size_t>(n - 2 * k)] = term;
    }
    return RationalPoly(std::move(c));
}

RationalPoly antiderivative_from_minus_one(const RationalPoly& p) {
    std::vector<Rational> c(static_cast<std::size_t>(p.degree() + 2));
    for (int k = 0; k <= p.degree(); ++k) c[static_cast<std::size_t>(k + 1)] = p.coeff(k) / Rational(k + 1);
    RationalPoly q(std::move(c));
    return q - RationalPoly::constant(q(-1));
}

RationalPoly power(const RationalPoly& p, int e) {
    RationalPoly r = RationalPoly::constant(1);
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

// Jacobi polynomial by its defining binomial sum, with integer parameters.
RationalPoly jacobi_by_definition(int m, int alpha, int beta) {
    const RationalPoly xm({make_rational(-1, 2), make_rational(1, 2)});
    const RationalPoly xp({make_rational(1, 2), make_rational(1, 2)});
    RationalPoly acc;
    for (int s = 0; s <= m; ++s)
        acc += Rational(binomial(m + alpha, m - s) * binomial(m + beta, s)) * (power(xm, s) * power(xp, m - s));
    return acc;
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

TEST_SUITE("legendre") {

TEST_CASE("exact P_n matches the explicit sum formula") {
    const auto& table = ExactTable::shared();
    for (int n = 0; n <= 40; ++n) {
        CHECK(table.P(n).is_real());
        CHECK(table.P(n).re == legendre_by_sum(n));
    }
}

TEST_CASE("exact I_n is the antiderivative of P_n from -1") {
    const auto& table = ExactTable::shared();
    for (int n = 1; n <= 40; ++n) CHECK(table.I(n).re == antiderivative_from_minus_one(legendre_by_sum(n)));
}

TEST_CASE("I_n = (P_{n+1} - P_{n-1}) / (2n+1) across the integers") {
    const auto& table = ExactTable::shared();
    for (int n = -30; n <= 30; ++n)
        CHECK(table.I(n) == make_rational(1, 2 * n + 1) * (table.P(n + 1) - table.P(n - 1)));
}

TEST_CASE("extension to negative indices") {
    const auto& table = ExactTable::shared();
    CHECK(table.I(0) == GaussRationalPoly{RationalPoly({0, 1}), RationalPoly::constant(-1)});
    CHECK(table.I(-1) == GaussRationalPoly{RationalPoly::constant(-1), RationalPoly({0, 1})});
    for (int n = 0; n <= 30; ++n) CHECK(table.P(-n - 1) == table.P(n).times_i());
    for (int n = 1; n <= 30; ++n) CHECK(table.I(-n - 1) == table.I(n).times_i());
}

TEST_CASE("orthogonality of P_n on [-1, 1]") {
    const auto& table = ExactTable::shared();
    for (int n = 0; n <= 12; ++n)
        for (int m = 0; m <= 12; ++m) {
            const Rational ip = (table.P(n).re * table.P(m).re).integral_sym();
            CHECK(ip == (n == m ? make_rational(2, 2 * n + 1) : Rational(0)));
        }
}

TEST_CASE("Jacobi (-1,-1) polynomials are scaled integrals") {
    for (int n = 1; n <= 20; ++n) CHECK(jacobi_from_I(n) == jacobi_by_definition(n + 1, -1, -1));
    CHECK_THROWS_AS(jacobi_from_I(0), DomainError);
}

TEST_CASE("floating recurrences agree with the exact polynomials") {
    const auto& table = ExactTable::shared();
    for (int n = 0; n <= 60; ++n)
        for (double x : {-1.0, -0.73, -0.2, 0.0, 0.41, 0.99, 1.0}) {
            CHECK(legendre_p(n, x) == doctest::Approx(table.P(n).re(Rational(x)).get_d()).epsilon(1e-12).scale(1.0));
            if (n >= 1)
                CHECK(legendre_integral(n, x) == doctest::Approx(table.I(n).re(Rational(x)).get_d()).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("complex evaluation follows the extension") {
    for (double x : {-0.5, 0.3}) {
        CHECK(eval_I(0, x) == Complex(x, -1.0));
        CHECK(eval_I(-1, x) == Complex(-1.0, x));
        for (int n = 1; n <= 10; ++n) {
            CHECK(eval_I(-n - 1, x) == Complex(0.0, legendre_integral(n, x)));
            CHECK(eval_P(-n - 1, x) == Complex(0.0, legendre_p(n, x)));
        }
    }
}

TEST_CASE("rational point evaluation has no degree cap") {
    const Rational x = make_rational(3, 7);
    for (int n = 1; n <= 30; ++n) {
        CHECK(exact_P_at(n, x) == ExactTable::shared().P(n).re(x));
        CHECK(exact_I_at(n, x) == ExactTable::shared().I(n).re(x));
    }
    CHECK(exact_I_at(200, 1) == 0);
    CHECK(exact_P_at(200, 1) == 1);
}

TEST_CASE("exact table capacity") {
    const ExactTable small(8);
    CHECK_NOTHROW(small.P(8));
    CHECK_NOTHROW(small.P(-9));
    CHECK_THROWS_AS(small.P(9), CapacityError);
    CHECK_THROWS_AS(small.I(8), CapacityError);
    CHECK_THROWS_AS(small.I(-9), CapacityError);
}

TEST_CASE("integral of the shifted polynomial against quadrature") {
    for (int n = 0; n <= 12; ++n)
        for (double t : {0.0, 0.125, 0.5, 0.8, 1.0}) {
            const double q = simpson([n](double r) { return eval_Q(n, r); }, 0.0, t, 2000);
            CHECK(shifted_integral(n, t) == doctest::Approx(q).epsilon(1e-9).scale(1.0));
        }
    // Norm of Q_n is 1/(2n+1).
    for (int n = 0; n <= 8; ++n) {
        const double norm = simpson([n](double r) { return eval_Q(n, r) * eval_Q(n, r); }, 0.0, 1.0, 2000);
        CHECK(norm == doctest::Approx(1.0 / (2 * n + 1)).epsilon(1e-8));
    }
}

TEST_CASE("Darboux approximant validation") {
    const double lo = std::numbers::pi / 6, hi = 5 * std::numbers::pi / 6;
    CHECK_THROWS_AS(DarbouxApproximant(1, 1, 10, lo, hi), std::invalid_argument);
    CHECK_THROWS_AS(DarbouxApproximant::legendre(10, 0.0, hi), DomainError);
    CHECK_THROWS_AS(DarbouxApproximant::legendre(10, 1e-4, hi), DomainError);
    CHECK_THROWS_AS(DarbouxApproximant::legendre(10, hi, lo), DomainError);
    CHECK_THROWS_AS(DarbouxApproximant::integral(1, lo, hi), std::invalid_argument);
    const auto apx = DarbouxApproximant::legendre(100, lo, hi);
    CHECK_THROWS_AS(darboux_approx(apx, 0.1), DomainError);
}

TEST_CASE("Darboux main term error is O(n^{-3/2})") {
    const double lo = std::numbers::pi / 6, hi = 5 * std::numbers::pi / 6;
    for (int n : {80, 320}) {
        const auto leg = DarbouxApproximant::legendre(n, lo, hi);
        const auto integ = DarbouxApproximant::integral(n, lo, hi);
        for (double theta = lo; theta <= hi; theta += 0.05) {
            CHECK(std::abs(leg.exact(theta) - darboux_approx(leg, theta)) <= 0.5 * std::pow(n, -1.5));
            CHECK(std::abs(integ.exact(theta) - darboux_approx(integ, theta)) <= 0.5 * std::pow(n, -1.5));
        }
    }
}

TEST_CASE("Darboux exact side for (-1,-1) is the Jacobi polynomial") {
    const auto apx = DarbouxApproximant::integral(12, 0.3, 2.8);
    for (double theta : {0.3, 1.0, 2.2}) {
        const double x = std::cos(theta);
        CHECK(apx.exact(theta) == doctest::Approx(jacobi_by_definition(12, -1, -1)(Rational(x)).get_d()).epsilon(1e-12));
    }
}

}
