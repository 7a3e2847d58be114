#include <kolmo/legendre.hpp>

#include <kolmo/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace kolmo::legendre {

namespace {

void check_unit_interval(double x) {
    if (!(x >= -1.0 && x <= 1.0))
        throw DomainError("x = " + std::to_string(x) + " outside [-1, 1]");
}

}  // namespace

double legendre_p(int n, double x) {
    check_unit_interval(x);
    if (n < 0) throw DomainError("legendre_p requires n >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1) * x * cur - k * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double legendre_integral(int n, double x) {
    check_unit_interval(x);
    if (n < 1) throw DomainError("legendre_integral requires n >= 1");
    // (k+2) I_{k+1} = (2k+1) x I_k - (k-1) I_{k-1}; the k = 1 step ignores I_0.
    double prev = 0.0;
    double cur = 0.5 * (x * x - 1.0);
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1) * x * cur - (k - 1) * prev) / (k + 2);
        prev = cur;
        cur = next;
    }
    return cur;
}

Complex eval_P(int n, double x) {
    if (n >= 0) return {legendre_p(n, x), 0.0};
    return {0.0, legendre_p(-n - 1, x)};
}

Complex eval_I(int n, double x) {
    check_unit_interval(x);
    if (n >= 1) return {legendre_integral(n, x), 0.0};
    if (n == 0) return {x, -1.0};
    if (n == -1) return {-1.0, x};
    return {0.0, legendre_integral(-n - 1, x)};
}

double eval_Q(int n, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t = " + std::to_string(t) + " outside [0, 1]");
    return legendre_p(n, 2.0 * t - 1.0);
}

double shifted_integral(int n, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t = " + std::to_string(t) + " outside [0, 1]");
    if (n < 0) throw DomainError("shifted_integral requires n >= 0");
    if (n == 0) return t;
    return 0.5 * legendre_integral(n, 2.0 * t - 1.0);
}

Rational exact_P_at(int n, const Rational& x) {
    if (n < 0) throw DomainError("exact_P_at requires n >= 0");
    if (n == 0) return 1;
    Rational prev = 1;
    Rational cur = x;
    for (int k = 1; k < n; ++k) {
        Rational next = (Rational(2 * k + 1) * x * cur - Rational(k) * prev) / Rational(k + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Rational exact_I_at(int n, const Rational& x) {
    if (n < 1) throw DomainError("exact_I_at requires n >= 1");
    Rational prev = 0;
    Rational cur = (x * x - 1) / 2;
    for (int k = 1; k < n; ++k) {
        Rational next = (Rational(2 * k + 1) * x * cur - Rational(k - 1) * prev) / Rational(k + 2);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

ExactTable::ExactTable(int max_degree) : max_degree_(max_degree) {
    if (max_degree < 1) throw std::invalid_argument("ExactTable needs max_degree >= 1");
    const int M = max_degree;

    std::vector<RationalPoly> real(static_cast<std::size_t>(M) + 1);
    real[0] = RationalPoly::constant(1);
    real[1] = RationalPoly::monomial(1);
    for (int k = 1; k < M; ++k) {
        real[k + 1] = make_rational(2 * k + 1, k + 1) * real[k].times_x()
                      - make_rational(k, k + 1) * real[k - 1];
    }

    p_.resize(2 * static_cast<std::size_t>(M) + 2);
    for (int n = -M - 1; n <= M; ++n) {
        GaussRationalPoly& slot = p_[static_cast<std::size_t>(n + M + 1)];
        if (n >= 0)
            slot.re = real[n];
        else
            slot.im = real[-n - 1];
    }

    i_.resize(2 * static_cast<std::size_t>(M));
    for (int n = -M; n <= M - 1; ++n) {
        i_[static_cast<std::size_t>(n + M)] =
            make_rational(1, 2 * n + 1) * (P(n + 1) - P(n - 1));
    }
}

const GaussRationalPoly& ExactTable::P(int n) const {
    if (n > max_degree_ || n < -max_degree_ - 1)
        throw CapacityError("exact P_" + std::to_string(n) + " exceeds degree cap " +
                            std::to_string(max_degree_));
    return p_[static_cast<std::size_t>(n + max_degree_ + 1)];
}

const GaussRationalPoly& ExactTable::I(int n) const {
    if (n > max_degree_ - 1 || n < -max_degree_)
        throw CapacityError("exact I_" + std::to_string(n) + " exceeds degree cap " +
                            std::to_string(max_degree_));
    return i_[static_cast<std::size_t>(n + max_degree_)];
}

const ExactTable& ExactTable::shared() {
    static const ExactTable table;
    return table;
}

GaussRationalPoly exact_P(int n) { return ExactTable::shared().P(n); }
GaussRationalPoly exact_I(int n) { return ExactTable::shared().I(n); }

RationalPoly jacobi_from_I(int n) {
    if (n < 1) throw DomainError("jacobi_from_I requires n >= 1");
    return make_rational(n, 2) * ExactTable::shared().I(n).re;
}

DarbouxApproximant::DarbouxApproximant(Rational alpha_, Rational beta_, int n_, double theta_min_,
                                       double theta_max_, double edge_guard)
    : alpha(std::move(alpha_)), beta(std::move(beta_)), n(n_), theta_min(theta_min_),
      theta_max(theta_max_) {
    const bool legendre_pair = alpha == 0 && beta == 0;
    const bool integral_pair = alpha == -1 && beta == -1;
    if (!legendre_pair && !integral_pair)
        throw std::invalid_argument("Darboux approximant supports (0,0) and (-1,-1) only");
    if (n < 1 || (integral_pair && n < 2)) throw std::invalid_argument("degree too small");
    if (!(theta_min > 0.0 && theta_min <= theta_max && theta_max < std::numbers::pi))
        throw DomainError("need 0 < theta_min <= theta_max < pi");
    if (theta_min < edge_guard || theta_max > std::numbers::pi - edge_guard)
        throw DomainError("theta range reaches within the edge guard of {0, pi}");
}

DarbouxApproximant DarbouxApproximant::legendre(int n, double theta_min, double theta_max) {
    return {0, 0, n, theta_min, theta_max};
}

DarbouxApproximant DarbouxApproximant::integral(int n, double theta_min, double theta_max) {
    return {-1, -1, n, theta_min, theta_max};
}

double DarbouxApproximant::exact(double theta) const {
    const double x = std::cos(theta);
    if (alpha == 0) return legendre_p(n, x);
    return 0.5 * (n - 1) * legendre_integral(n - 1, x);
}

double darboux_approx(const DarbouxApproximant& apx, double theta) {
    if (!(theta >= apx.theta_min && theta <= apx.theta_max))
        throw DomainError("theta outside the approximant's range");
    const double a = apx.alpha.get_d();
    const double b = apx.beta.get_d();
    const double k = std::pow(std::numbers::pi, -0.5) * std::pow(std::sin(0.5 * theta), -a - 0.5) *
                     std::pow(std::cos(0.5 * theta), -b - 0.5);
    const double phase = (apx.n + 0.5 * (a + b + 1.0)) * theta - (a + 0.5) * 0.5 * std::numbers::pi;
    return k * std::cos(phase) / std::sqrt(static_cast<double>(apx.n));
}

double darboux_scaled_error(const DarbouxApproximant& apx, int theta_points) {
    if (theta_points < 2) throw DomainError("need at least two theta points");
    const double scale = std::pow(static_cast<double>(apx.n), 1.5);
    double worst = 0.0;
    for (int j = 0; j < theta_points; ++j) {
        double theta = apx.theta_min + (apx.theta_max - apx.theta_min) * j / (theta_points - 1);
        if (j == theta_points - 1) theta = apx.theta_max;
        worst = std::max(worst, scale * std::abs(apx.exact(theta) - darboux_approx(apx, theta)));
    }
    return worst;
}

}  // namespace kolmo::legendre
