#include <kolmo/hankel.hpp>

#include <kolmo/errors.hpp>

#include <stdexcept>
#include <string>

namespace kolmo::hankel {

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int k = 1; k <= n; ++k) m.at(k, k) = 1;
    return m;
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix m(cols_, rows_);
    for (int k = 1; k <= rows_; ++k)
        for (int l = 1; l <= cols_; ++l) m.at(l, k) = at(k, l);
    return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not match");
    RationalMatrix m(a.rows_, b.cols_);
    for (int k = 1; k <= a.rows_; ++k)
        for (int l = 1; l <= b.cols_; ++l) {
            Rational acc = 0;
            for (int j = 1; j <= a.cols_; ++j) acc += a.at(k, j) * b.at(j, l);
            m.at(k, l) = acc;
        }
    return m;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

Rational inv_factorial(int n) { return Rational(1, 1) / Rational(factorial(static_cast<unsigned>(n))); }

int sign(int e) { return e % 2 == 0 ? 1 : -1; }

// sum_{m=0}^{k-1} C(N-k+m, l-1) C(N+m-1, m)
Integer inner_sum(int N, int k, int l) {
    Integer acc = 0;
    for (int m = 0; m < k; ++m) acc += binomial(N - k + m, l - 1) * binomial(N + m - 1, m);
    return acc;
}

void check_N(int N, int cap) {
    if (N < 1) throw DomainError("N must be >= 1");
    if (N > cap)
        throw CapacityError("Hankel system N = " + std::to_string(N) + " exceeds cap " +
                            std::to_string(cap));
}

void require(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("Hankel invariant failed: ") + what);
}

}  // namespace

RationalMatrix V_at(int N, const Rational& t) {
    RationalMatrix v(N, N);
    Rational power = t;  // t^{k+l-1}
    std::vector<Rational> powers(static_cast<std::size_t>(2 * N));
    for (int e = 1; e < 2 * N; ++e) {
        powers[static_cast<std::size_t>(e)] = power;
        power *= t;
    }
    for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l)
            v.at(k, l) = sign(l - 1) * powers[static_cast<std::size_t>(k + l - 1)] * inv_factorial(k + l - 1);
    return v;
}

RationalMatrix V1_inverse_closed(int N) {
    RationalMatrix m(N, N);
    for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) {
            Integer v = factorial(static_cast<unsigned>(k - 1)) * factorial(static_cast<unsigned>(l)) *
                        binomial(N - 1, k - 1) * binomial(N + l - 1, l) * inner_sum(N, k, l);
            m.at(k, l) = Rational(sign(N + l) * v);
        }
    return m;
}

RationalPoly alpha_closed(int N, int l) {
    std::vector<Rational> c(static_cast<std::size_t>(N + 1));
    const Integer front = factorial(static_cast<unsigned>(l - 1)) * binomial(N + l - 1, l - 1);
    for (int k = 1; k <= N; ++k)
        c[static_cast<std::size_t>(k)] =
            Rational(sign(N + k + l + 1) * front * binomial(N, k) * inner_sum(N, k, l));
    return RationalPoly(std::move(c));
}

RationalPoly alpha_matrix_route(int N, int l, const RationalMatrix& V1inv) {
    // V(t)_{1k} = (-1)^{k-1} t^k / k!
    std::vector<Rational> c(static_cast<std::size_t>(N + 1));
    for (int k = 1; k <= N; ++k) c[static_cast<std::size_t>(k)] = sign(k - 1) * inv_factorial(k) * V1inv.at(k, l);
    return RationalPoly(std::move(c));
}

RationalMatrix expA_series(int N) {
    RationalMatrix A(N, N);
    for (int k = 2; k <= N; ++k) A.at(k, k - 1) = 1;
    RationalMatrix sum = RationalMatrix::identity(N);
    RationalMatrix power = RationalMatrix::identity(N);
    for (int j = 1; j < N; ++j) {
        power = power * A;
        const Rational scale = inv_factorial(j);
        for (int k = 1; k <= N; ++k)
            for (int l = 1; l <= N; ++l) sum.at(k, l) += scale * power.at(k, l);
    }
    return sum;
}

HankelSystem build_system(int N, int cap) {
    check_N(N, cap);
    HankelSystem sys;
    sys.N = N;
    sys.V1 = V_at(N, 1);
    sys.V1inv = V1_inverse_closed(N);
    sys.expA = RationalMatrix(N, N);
    for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= k; ++l) sys.expA.at(k, l) = inv_factorial(k - l);
    sys.W = sys.V1 * sys.expA.transposed();
    for (int l = 1; l <= N; ++l) {
        sys.alphas.push_back(alpha_closed(N, l));
        // (1 - (1-t)^l) / l!
        std::vector<Rational> c(static_cast<std::size_t>(l + 1));
        for (int j = 1; j <= l; ++j)
            c[static_cast<std::size_t>(j)] = -sign(j) * Rational(binomial(l, j)) * inv_factorial(l);
        sys.w.emplace_back(std::move(c));
    }

    require(sys.V1 * sys.V1inv == RationalMatrix::identity(N), "V(1) V(1)^{-1} = I");
    require(sys.expA == expA_series(N), "e^A matches its series");
    require(sys.W == sys.W.transposed(), "E[B_1 B_1^T] symmetric");
    for (int l = 1; l <= N; ++l) {
        const auto& a = sys.alphas[static_cast<std::size_t>(l - 1)];
        require(a.degree() <= N, "deg alpha_l <= N");
        require(a == alpha_matrix_route(N, l, sys.V1inv), "alpha closed form = matrix route");
    }
    return sys;
}

Rational alpha_eval(const HankelSystem& sys, int l, const Rational& t) {
    if (l < 1 || l > sys.N)
        throw IndexError("alpha index " + std::to_string(l) + " outside 1.." + std::to_string(sys.N));
    if (t < 0 || t > 1) throw DomainError("t must lie in [0, 1]");
    return sys.alphas[static_cast<std::size_t>(l - 1)](t);
}

Rational cross_covariance(const HankelSystem& sys, const Rational& s, const Rational& t) {
    if (s < 0 || s > 1 || t < 0 || t > 1) throw DomainError("s, t must lie in [0, 1]");
    const int N = sys.N;
    std::vector<Rational> as(static_cast<std::size_t>(N)), at(static_cast<std::size_t>(N));
    Rational result = s < t ? s : t;
    for (int l = 1; l <= N; ++l) {
        const auto i = static_cast<std::size_t>(l - 1);
        as[i] = sys.alphas[i](s);
        at[i] = sys.alphas[i](t);
        result -= as[i] * sys.w[i](t) + at[i] * sys.w[i](s);
    }
    for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l)
            result += as[static_cast<std::size_t>(k - 1)] * sys.W.at(k, l) * at[static_cast<std::size_t>(l - 1)];
    return result;
}

Rational cross_covariance(int N, const Rational& s, const Rational& t, int cap) {
    return cross_covariance(build_system(N, cap), s, t);
}

}  // namespace kolmo::hankel
