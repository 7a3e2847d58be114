#include <kolmo/kernels.hpp>

#include <kolmo/errors.hpp>
#include <kolmo/legendre.hpp>
#include <kolmo/simd.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace kolmo::kernels {

namespace {

void check_closed(double v, double lo, double hi, const char* what) {
    if (!(v >= lo && v <= hi))
        throw DomainError(std::string(what) + " = " + std::to_string(v) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

void check_N(int N) {
    if (N < 1) throw DomainError("truncation step N must be >= 1");
}

}  // namespace

KernelConfig::KernelConfig(int N_, bool exact_) : N(N_), exact(exact_) { check_N(N); }

double SemicircleDensity::operator()(double x) const {
    check_closed(x, -1.0, 1.0, "x");
    return std::sqrt(std::max(0.0, 1.0 - x * x)) / std::numbers::pi;
}

double SemicircleDensity::variance(double t) const {
    check_closed(t, 0.0, 1.0, "t");
    return std::sqrt(std::max(0.0, t * (1.0 - t))) / std::numbers::pi;
}

void cov_CN_batch(std::span<const double> s, std::span<const double> t, int N, std::span<double> out) {
    check_N(N);
    std::vector<double> x(s.size()), y(t.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        check_closed(s[i], 0.0, 1.0, "s");
        check_closed(t[i], 0.0, 1.0, "t");
        x[i] = 2.0 * s[i] - 1.0;
        y[i] = 2.0 * t[i] - 1.0;
    }
    simd::integral_pair_sums(x, y, N, out);
    for (std::size_t i = 0; i < s.size(); ++i)
        out[i] = std::min(s[i], t[i]) - s[i] * t[i] - 0.25 * out[i];
}

void R_N_batch(std::span<const double> x, std::span<const double> y, int N, std::span<double> out) {
    check_N(N);
    for (std::size_t i = 0; i < x.size(); ++i) {
        check_closed(x[i], -1.0, 1.0, "x");
        check_closed(y[i], -1.0, 1.0, "y");
    }
    simd::integral_pair_sums(x, y, N, out);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = 1.0 + x[i];
        const double v = 1.0 + y[i];
        out[i] = N * (std::min(u, v) - 0.5 * u * v - 0.5 * out[i]);
    }
}

void S_N_batch(std::span<const double> x, int N, std::span<double> out) { R_N_batch(x, x, N, out); }

void dSN_dx_batch(std::span<const double> x, int N, std::span<double> out) {
    check_N(N);
    for (double v : x) check_closed(v, -1.0, 1.0, "x");
    simd::legendre_edge_products(x, N, out);
    for (double& v : out) v *= -static_cast<double>(N);
}

double cov_CN(double s, double t, const KernelConfig& cfg) {
    double out = 0.0;
    cov_CN_batch({&s, 1}, {&t, 1}, cfg.N, {&out, 1});
    return out;
}

double R_N(double x, double y, const KernelConfig& cfg) {
    double out = 0.0;
    R_N_batch({&x, 1}, {&y, 1}, cfg.N, {&out, 1});
    return out;
}

double S_N_diag(double x, int N) { return R_N(x, x, KernelConfig(N)); }

double dSN_dx(double x, int N) {
    double out = 0.0;
    dSN_dx_batch({&x, 1}, N, {&out, 1});
    return out;
}

Rational cov_CN_exact(int N, const Rational& s, const Rational& t) {
    check_N(N);
    if (s < 0 || s > 1 || t < 0 || t > 1) throw DomainError("s, t must lie in [0, 1]");
    const Rational x = 2 * s - 1;
    const Rational y = 2 * t - 1;
    Rational acc = s * t;
    for (int n = 1; n < N; ++n)
        acc += Rational(2 * n + 1) * legendre::exact_I_at(n, x) * legendre::exact_I_at(n, y) / 4;
    return (s < t ? s : t) - acc;
}

std::pair<double, double> cd_pair(int n, double x, double y) {
    if (n < 1) throw DomainError("cd_pair requires n >= 1");
    using legendre::legendre_integral;
    const double ixn = legendre_integral(n, x), iyn = legendre_integral(n, y);
    const double ixn1 = legendre_integral(n + 1, x), iyn1 = legendre_integral(n + 1, y);
    const double direct = ixn1 * iyn - ixn * iyn1;
    double previous = 0.0;  // (n-1) D_n vanishes for n = 1
    if (n >= 2) {
        const double ixm = legendre_integral(n - 1, x), iym = legendre_integral(n - 1, y);
        previous = (n - 1) * (ixn * iym - ixm * iyn);
    }
    const double stepped = ((x - y) * (2 * n + 1) * ixn * iyn + previous) / (n + 2);
    return {direct, stepped};
}

std::pair<Rational, Rational> cd_pair_exact(int n, const Rational& x, const Rational& y) {
    if (n < 1) throw DomainError("cd_pair requires n >= 1");
    using legendre::exact_I_at;
    const Rational ixn = exact_I_at(n, x), iyn = exact_I_at(n, y);
    const Rational ixn1 = exact_I_at(n + 1, x), iyn1 = exact_I_at(n + 1, y);
    Rational direct = ixn1 * iyn - ixn * iyn1;
    Rational previous = 0;
    if (n >= 2) {
        const Rational ixm = exact_I_at(n - 1, x), iym = exact_I_at(n - 1, y);
        previous = Rational(n - 1) * (ixn * iym - ixm * iyn);
    }
    Rational stepped = ((x - y) * Rational(2 * n + 1) * ixn * iyn + previous) / Rational(n + 2);
    return {direct, stepped};
}

bool cd_sum_check(int N, const Rational& x, const Rational& y) {
    check_N(N);
    if (abs(x) > 1 || abs(y) > 1) throw DomainError("x, y must lie in [-1, 1]");
    const auto& table = legendre::ExactTable::shared();
    std::vector<Rational> ix, iy;  // index n = 1 .. N+1
    for (int n = 1; n <= N + 1; ++n) {
        const RationalPoly& poly = table.I(n).re;
        ix.push_back(poly(x));
        iy.push_back(poly(y));
    }
    auto I_x = [&](int n) -> const Rational& { return ix[static_cast<std::size_t>(n - 1)]; };
    auto I_y = [&](int n) -> const Rational& { return iy[static_cast<std::size_t>(n - 1)]; };
    auto D = [&](int m) -> Rational { return I_x(m) * I_y(m - 1) - I_x(m - 1) * I_y(m); };  // D_m, m >= 2

    Rational lhs = 0;
    for (int n = 1; n <= N; ++n) lhs += Rational(2 * n + 1) * I_x(n) * I_y(n);
    lhs *= x - y;
    Rational rhs = Rational(N) * D(N + 1);
    for (int n = 1; n <= N; ++n) rhs += 2 * D(n + 1);
    return lhs == rhs;
}

double R_N_tail_cd(double x, double y, int N, int extra_terms) {
    check_N(N);
    check_closed(x, -1.0, 1.0, "x");
    check_closed(y, -1.0, 1.0, "y");
    if (x == y) throw DomainError("tail form needs x != y");
    // Running I_{n-1}, I_n at n = 1 (I_0 only enters through a zero weight).
    double xm = 0.0, ym = 0.0;
    double xc = 0.5 * (x * x - 1.0), yc = 0.5 * (y * y - 1.0);
    auto advance = [](double z, double& prev, double& cur, int n) {
        const double next = ((2 * n + 1) * z * cur - (n - 1) * prev) / (n + 2);
        prev = cur;
        cur = next;
    };
    for (int n = 1; n < N; ++n) {
        advance(x, xm, xc, n);
        advance(y, ym, yc, n);
    }
    // now xc = I_N(x), xm = I_{N-1}(x) (I_0 treated as 0, harmless: N = 1 gets weight 0)
    const double d_N = xc * ym - xm * yc;
    double tail = -(N - 1) * d_N;
    double sum = 0.0, comp = 0.0;
    for (int n = N; n <= N + extra_terms; ++n) {
        advance(x, xm, xc, n);
        advance(y, ym, yc, n);
        const double d = xc * ym - xm * yc;  // D_{n+1}
        const double yk = 2.0 * d - comp;
        const double t = sum + yk;
        comp = (t - sum) - yk;
        sum = t;
    }
    tail += sum;
    return 0.5 * N * tail / (x - y);
}

std::vector<DecorrelationRow> decorrelation_scan(double s, std::span<const double> t_offsets,
                                                 double beta, std::span<const int> N_list) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("decorrelation base point must lie in (0, 1)");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
    std::vector<DecorrelationRow> rows;
    for (int N : N_list) {
        for (double t : t_offsets) {
            const double u = s + std::pow(static_cast<double>(N), -beta) * t;
            if (!(u >= 0.0 && u <= 1.0))
                throw DomainError("shifted point " + std::to_string(u) + " leaves [0, 1]");
            rows.push_back({N, beta, t, N * cov_CN(s, u, KernelConfig(N))});
        }
    }
    return rows;
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 2) throw std::invalid_argument("grid needs at least two points");
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
    v.front() = lo;
    v.back() = hi;
    return v;
}

std::vector<GridPoint> kernel_grid(GridKind what, int N, int count, int threads) {
    check_N(N);
    const bool unit = what == GridKind::C;
    const auto axis = linspace(unit ? 0.0 : -1.0, 1.0, count);
    std::vector<double> a, b;
    if (what == GridKind::S) {
        a = axis;
        b = axis;
    } else {
        for (double u : axis)
            for (double v : axis) {
                a.push_back(u);
                b.push_back(v);
            }
    }
    std::vector<double> values(a.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        std::span<const double> sa(a.data() + begin, end - begin), sb(b.data() + begin, end - begin);
        std::span<double> so(values.data() + begin, end - begin);
        if (what == GridKind::C)
            cov_CN_batch(sa, sb, N, so);
        else
            R_N_batch(sa, sb, N, so);
    };
    const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || a.size() < 2 * workers) {
        work(0, a.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (a.size() + workers - 1) / workers;
        for (std::size_t begin = 0; begin < a.size(); begin += chunk)
            pool.emplace_back(work, begin, std::min(a.size(), begin + chunk));
        for (auto& th : pool) th.join();
    }
    std::vector<GridPoint> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = {a[i], b[i], values[i]};
    return out;
}

}  // namespace kolmo::kernels
