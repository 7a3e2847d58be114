#include <kolmo/verify.hpp>

#include <kolmo/hankel.hpp>
#include <kolmo/kernels.hpp>
#include <kolmo/legendre.hpp>
#include <kolmo/moments.hpp>
#include <kolmo/sampler.hpp>
#include <kolmo/simd.hpp>

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <sstream>

namespace kolmo::verify {

namespace {

// A check returns an empty string on success and a description otherwise.
using Check = std::function<std::string()>;

CheckResult run(const std::string& suite, const std::string& name, const Check& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
        detail = body();
        pass = detail.empty();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {suite, name, pass, pass ? "ok" : detail, secs};
}

template <class... Args>
std::string fail(Args&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

std::string legendre_symmetry() {
    const auto& table = legendre::ExactTable::shared();
    for (int n = 1; n <= 30; ++n)
        if (!(table.I(-n - 1) == table.I(n).times_i())) return fail("I_{-n-1} != i I_n at n=", n);
    for (int n = 0; n <= 30; ++n)
        if (!(table.P(-n - 1) == table.P(n).times_i())) return fail("P_{-n-1} != i P_n at n=", n);
    return {};
}

std::string legendre_integral_recursion() {
    const auto& table = legendre::ExactTable::shared();
    for (int n = 1; n < 40; ++n) {
        const auto lhs = Rational(n + 2) * table.I(n + 1).re;
        const auto rhs = Rational(2 * n + 1) * table.I(n).re.times_x() - Rational(n - 1) * table.I(n - 1).re;
        if (!(lhs == rhs)) return fail("three-term recursion fails at n=", n);
    }
    return {};
}

std::string moment_recursion() {
    for (int p = -4; p <= 6; ++p)
        for (int q = -4; q <= 6; ++q) {
            if ((p + q) % 2 != 0) continue;
            for (int k = 0; k <= 4; ++k) {
                const moments::MomentKey key(p, q, k);
                if (!(moments::moment_recursed(key) == moments::moment_oracle(key)))
                    return fail("m_{", p, ",", q, "}^", k, " recursion != oracle");
            }
        }
    return {};
}

std::string pfd_identity() {
    for (int a = 0; a <= 3; ++a)
        for (int k = 0; k <= 4; ++k)
            for (int n = a + 1; n <= a + 8; ++n) {
                const auto m = moments::moment_oracle(moments::MomentKey(n - a, n + a, k));
                if (!(m == GaussRational(moments::pfd_eval(a, k, n))))
                    return fail("partial fractions fail at a=", a, " k=", k, " n=", n);
            }
    return {};
}

std::string pfd_by_solve() {
    for (int a = 0; a <= 3; ++a)
        for (int k = 0; k <= 4; ++k)
            if (moments::pfd_coeffs(a, k) != moments::pfd_coeffs_by_solve(a, k))
                return fail("recurrence and solve disagree at a=", a, " k=", k);
    return {};
}

std::string catalan_triangle() {
    for (int a = 0; a <= 6; ++a)
        for (int k = 0; k <= 6; ++k) {
            const Rational t = moments::B_from_table(a, k);
            if (t != moments::B_closed(a, k) || t != moments::B_recursed(a, k))
                return fail("B_{", a, ",", k, "} routes disagree");
        }
    for (unsigned k = 0; k <= 10; ++k)
        if (moments::B_closed(0, static_cast<int>(k)) != 2 * moments::semicircle_even_moment(k))
            return fail("B_{0,k} != 4^{-k} C_k at k=", k);
    return {};
}

std::string idat0() {
    for (int k = 0; k <= 8; ++k)
        if (!moments::idat0_check(k)) return fail("weighted coefficient identity fails at k=", k);
    return {};
}

std::string sn_moments() {
    for (int k = 0; k <= 3; ++k)
        for (int N : {8, 20}) {
            if (moments::sn_even_moment_exact(k, N) != moments::sn_even_moment_tail(k, N))
                return fail("direct and tail forms differ at k=", k, " N=", N);
            if (moments::sn_odd_moment_exact(k, N) != 0) return fail("odd moment nonzero at k=", k);
        }
    return {};
}

std::string christoffel_darboux() {
    const Rational pts[][2] = {{make_rational(1, 3), make_rational(-1, 2)}, {make_rational(2, 7), make_rational(5, 9)}, {1, make_rational(-3, 4)}};
    for (const auto& xy : pts)
        for (int N = 1; N <= 20; ++N)
            if (!kernels::cd_sum_check(N, xy[0], xy[1])) return fail("summed identity fails at N=", N);
    for (const auto& xy : pts)
        for (int n = 1; n <= 20; ++n) {
            const auto [direct, stepped] = kernels::cd_pair_exact(n, xy[0], xy[1]);
            if (direct != stepped) return fail("one-step identity fails at n=", n);
        }
    return {};
}

std::string hankel_small() {
    for (int N = 1; N <= 6; ++N) {
        const auto r = hankel_checks(N);
        for (const auto& c : r)
            if (!c.pass) return fail("N=", N, " ", c.name, ": ", c.detail);
    }
    return {};
}

std::string simd_equivalence() {
    if (!simd::avx2_available()) return {};
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(37), y(37), a(37), b(37);
    for (auto& v : x) v = u(eng);
    for (auto& v : y) v = u(eng);
    for (int N : {1, 2, 5, 64, 1500}) {
        simd::scalar::integral_pair_sums(x, y, N, a);
        simd::avx2::integral_pair_sums(x, y, N, b);
        if (a != b) return fail("pair sums differ at N=", N);
        simd::scalar::legendre_edge_products(x, N, a);
        simd::avx2::legendre_edge_products(x, N, b);
        if (a != b) return fail("edge products differ at N=", N);
    }
    return {};
}

std::string derivative_fd() {
    const int N = 50;
    const double h = 1e-4;
    for (double x = -0.9; x <= 0.9; x += 0.15) {
        const double fd = (kernels::S_N_diag(x + h, N) - kernels::S_N_diag(x - h, N)) / (2 * h);
        const double d = kernels::dSN_dx(x, N);
        if (std::abs(fd - d) > 1e-4 * std::max(1.0, std::abs(d))) return fail("derivative mismatch at x=", x);
    }
    return {};
}

std::string tail_form() {
    for (auto [x, y] : {std::pair{0.3, -0.2}, {0.7, 0.1}, {-0.5, 0.4}})
        for (int N : {4, 32}) {
            const double direct = kernels::R_N(x, y, kernels::KernelConfig(N));
            const double tail = kernels::R_N_tail_cd(x, y, N, 200000);
            if (std::abs(direct - tail) > 1e-6) return fail("tail form off by ", direct - tail, " at N=", N);
        }
    return {};
}

std::string exact_vs_double() {
    for (int N : {1, 3, 9})
        for (int i = 0; i <= 8; ++i) {
            const Rational s = make_rational(i, 8), t = make_rational(8 - i, 8);
            const double exact = kernels::cov_CN_exact(N, s, t).get_d();
            const double approx = kernels::cov_CN(s.get_d(), t.get_d(), kernels::KernelConfig(N));
            if (std::abs(exact - approx) > 1e-13) return fail("C_N float path off at N=", N);
        }
    return {};
}

std::string semicircle_limit() {
    const int N = 1000;
    for (double x : {-0.5, 0.0, 0.5}) {
        const double gap = std::abs(kernels::S_N_diag(x, N) - kernels::SemicircleDensity{}(x));
        if (gap > 0.03) return fail("S_N far from the semicircle at x=", x, ": ", gap);
    }
    return {};
}

std::string monte_carlo_small() {
    const auto grid = sampler::PathGrid::uniform(8);
    const auto e = sampler::sample_spectral(4, grid, 20000, 20240601);
    std::vector<int> idx{1, 2, 3, 4, 5, 6, 7};
    const auto m = sampler::ensemble_moments(e, idx);
    const kernels::KernelConfig cfg(4);
    for (int i = 0; i < m.P; ++i)
        for (int j = 0; j < m.P; ++j) {
            const double c = kernels::cov_CN(grid[idx[i]], grid[idx[j]], cfg);
            if (std::abs(m.c(i, j) - c) > 4.5 * m.c_se(i, j)) return fail("covariance entry (", i, ",", j, ") off");
        }
    return {};
}

}  // namespace

std::vector<CheckResult> hankel_checks(int N) {
    std::vector<CheckResult> out;
    hankel::HankelSystem sys;
    out.push_back(run("hankel", "build", [&] {
        sys = hankel::build_system(N);
        return std::string();
    }));
    if (!out.back().pass) return out;
    out.push_back(run("hankel", "inverse", [&] {
        return sys.V1 * sys.V1inv == hankel::RationalMatrix::identity(N) ? std::string() : "V(1) V(1)^{-1} != I";
    }));
    out.push_back(run("hankel", "alpha_two_routes", [&] {
        for (int l = 1; l <= N; ++l)
            if (!(hankel::alpha_closed(N, l) == hankel::alpha_matrix_route(N, l, sys.V1inv)))
                return fail("alpha_", l, " routes differ");
        return std::string();
    }));
    out.push_back(run("hankel", "expA_series", [&] {
        return sys.expA == hankel::expA_series(N) ? std::string() : "e^A differs from its series";
    }));
    out.push_back(run("hankel", "pinned_ends", [&] {
        for (int i = 0; i <= 8; ++i) {
            const Rational s = make_rational(i, 8);
            if (hankel::cross_covariance(sys, s, 1) != 0) return fail("cov(s,1) != 0 at s=", i, "/8");
            if (hankel::cross_covariance(sys, 0, s) != 0) return fail("cov(0,t) != 0 at t=", i, "/8");
        }
        return std::string();
    }));
    out.push_back(run("hankel", "legendre_representation", [&] {
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j <= 8; ++j) {
                const Rational s = make_rational(i, 8), t = make_rational(j, 8);
                if (hankel::cross_covariance(sys, s, t) != kernels::cov_CN_exact(N, s, t))
                    return fail("covariances differ at (", i, "/8, ", j, "/8)");
            }
        return std::string();
    }));
    return out;
}

std::vector<CheckResult> run_suites(Level level) {
    std::vector<CheckResult> out;
    out.push_back(run("legendre", "reflection", legendre_symmetry));
    out.push_back(run("legendre", "integral_recursion", legendre_integral_recursion));
    out.push_back(run("moments", "recursion_vs_oracle", moment_recursion));
    out.push_back(run("moments", "partial_fractions", pfd_identity));
    out.push_back(run("moments", "coefficients_by_solve", pfd_by_solve));
    out.push_back(run("moments", "catalan_triangle", catalan_triangle));
    out.push_back(run("moments", "weighted_coefficient_sum", idat0));
    out.push_back(run("moments", "sn_moments", sn_moments));
    out.push_back(run("kernels", "christoffel_darboux", christoffel_darboux));
    out.push_back(run("hankel", "systems_1_to_6", hankel_small));
    if (level == Level::full) {
        out.push_back(run("simd", "scalar_avx2_identical", simd_equivalence));
        out.push_back(run("kernels", "derivative_identity", derivative_fd));
        out.push_back(run("kernels", "tail_form", tail_form));
        out.push_back(run("kernels", "exact_vs_float", exact_vs_double));
        out.push_back(run("kernels", "semicircle_limit", semicircle_limit));
        out.push_back(run("sampler", "spectral_covariance", monte_carlo_small));
    }
    return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace kolmo::verify
