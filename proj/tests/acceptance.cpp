// Acceptance run: one PASS/FAIL line per criterion with its runtime.
// Exit status is nonzero if any criterion fails.

#include <kolmo/hankel.hpp>
#include <kolmo/kernels.hpp>
#include <kolmo/legendre.hpp>
#include <kolmo/moments.hpp>
#include <kolmo/sampler.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <thread>
#include <sstream>
#include <string>
#include <vector>

using namespace kolmo;

namespace {

// Tolerances fixed by calibration runs; see README.
constexpr double kSemicircleTol = 0.02;        // |S_N - S| at N = 2000
constexpr double kDerivativeRelTol = 1e-5;
constexpr double kSigmas = 4.0;
constexpr double kLimitTol = 0.02;             // |N C_N(1/2,1/2) - 1/(2 pi)| at N = 2000
constexpr double kDarbouxBoundLegendre = 0.40;
constexpr double kDarbouxBoundIntegral = 0.21;
constexpr double kDarbouxGrowth = 1.1;         // E_n <= 1.1 E_50
constexpr int kDarbouxThetaPoints = 2001;
constexpr std::uint64_t kSeedSpectral = 20240611;
constexpr std::uint64_t kSeedPathwise = 20240612;
constexpr std::uint64_t kSeedFluct = 20240613;
constexpr int kMcPaths = 100000;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int threads() {
    const unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(std::min(h, 16u));
}

Outcome ac1() {
    int checked = 0;
    for (int a = 0; a <= 4; ++a)
        for (int k = 0; k <= 6; ++k)
            for (int n = a + 1; n <= a + 20; ++n) {
                const auto m = moments::moment_oracle(moments::MomentKey(n - a, n + a, k));
                if (!m.is_real() || m.re != moments::pfd_eval(a, k, n))
                    return {false, "mismatch at a=" + std::to_string(a) + " k=" + std::to_string(k) + " n=" + std::to_string(n)};
                ++checked;
            }
    return {true, std::to_string(checked) + " exact identities"};
}

Outcome ac2() {
    for (int a = 0; a <= 8; ++a)
        for (int k = 0; k <= 8; ++k) {
            const Rational c = moments::B_closed(a, k);
            if (moments::B_from_table(a, k) != c || moments::B_recursed(a, k) != c)
                return {false, "B mismatch at a=" + std::to_string(a) + " k=" + std::to_string(k)};
        }
    for (unsigned k = 0; k <= 10; ++k) {
        Integer p4;
        mpz_ui_pow_ui(p4.get_mpz_t(), 4, k);
        if (moments::B_closed(0, static_cast<int>(k)) != Rational(moments::catalan(k)) / Rational(p4))
            return {false, "B_{0,k} != 4^-k C_k at k=" + std::to_string(k)};
    }
    return {true, "81 triples and 11 Catalan values exact"};
}

Outcome ac3() {
    std::ostringstream d;
    for (int k = 0; k <= 4; ++k) {
        const Rational c = moments::sn_moment_gap_constant(k);
        for (int N : {50, 100, 200}) {
            const Rational exact = moments::sn_even_moment_exact(k, N);
            if (exact != moments::sn_even_moment_tail(k, N)) return {false, "tail formula differs at k=" + std::to_string(k)};
            const Rational gap = exact - moments::semicircle_even_moment(static_cast<unsigned>(k));
            if (abs(gap) > c / N) return {false, "gap bound fails at k=" + std::to_string(k) + " N=" + std::to_string(N)};
            if (moments::sn_odd_moment_exact(k, N) != 0) return {false, "odd moment nonzero"};
            if (N == 200) d << "k=" << k << " N*gap=" << Rational(Rational(N) * gap).get_d() << " c_k=" << c.get_d() << "; ";
        }
    }
    return {true, d.str()};
}

Outcome ac4() {
    int checked = 0;
    for (int N = 1; N <= 8; ++N) {
        const auto sys = hankel::build_system(N);
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j <= 8; ++j) {
                const Rational s = make_rational(i, 8), t = make_rational(j, 8);
                if (hankel::cross_covariance(sys, s, t) != kernels::cov_CN_exact(N, s, t))
                    return {false, "differs at N=" + std::to_string(N)};
                ++checked;
            }
    }
    return {true, std::to_string(checked) + " exact equalities"};
}

Outcome ac5() {
    for (int N = 1; N <= 12; ++N)
        if (!(hankel::V_at(N, 1) * hankel::V1_inverse_closed(N) == hankel::RationalMatrix::identity(N)))
            return {false, "inverse fails at N=" + std::to_string(N)};
    return {true, "N=1..12"};
}

Outcome ac6() {
    const std::pair<Rational, Rational> pairs[] = {
        {make_rational(1, 2), make_rational(-1, 3)}, {make_rational(1, 7), make_rational(2, 5)},
        {Rational(1), Rational(-1)},                 {Rational(0), make_rational(3, 4)},
        {make_rational(-5, 6), make_rational(-1, 8)}, {make_rational(9, 10), make_rational(8, 9)},
        {make_rational(2, 3), make_rational(2, 3)},  {make_rational(-1, 2), Rational(1)},
        {make_rational(1, 11), make_rational(-7, 13)}, {make_rational(3, 5), Rational(0)},
    };
    for (int N = 1; N <= 40; ++N)
        for (const auto& [x, y] : pairs)
            if (!kernels::cd_sum_check(N, x, y)) return {false, "fails at N=" + std::to_string(N)};
    return {true, "400 exact identities"};
}

Outcome ac7() {
    const kernels::SemicircleDensity rho;
    std::ostringstream d;
    bool ok = true;
    for (double x : {0.0, 0.5, -0.5}) {
        double prev = INFINITY;
        d << "x=" << x << ":";
        for (int N : {250, 500, 1000, 2000}) {
            const double e = std::abs(kernels::S_N_diag(x, N) - rho(x));
            d << ' ' << e;
            if (!(e < prev)) ok = false;
            prev = e;
        }
        if (prev > kSemicircleTol) ok = false;
        d << "; ";
    }
    return {ok, d.str()};
}

Outcome ac8() {
    double worst = 0.0;
    for (int N : {50, 200, 500}) {
        const double h = 1e-3 / N;
        for (int i = 0; i < 33; ++i) {
            const double x = -0.9 + 1.8 * i / 32.0;
            const double fd = (kernels::S_N_diag(x + h, N) - kernels::S_N_diag(x - h, N)) / (2 * h);
            const double d = kernels::dSN_dx(x, N);
            worst = std::max(worst, std::abs(fd - d) / std::max(std::abs(d), 1.0));
        }
    }
    return {worst <= kDerivativeRelTol, "worst relative error " + std::to_string(worst)};
}

Outcome ac9() {
    const int N = 4, M = 8;
    const auto grid = sampler::PathGrid::uniform(M);
    const auto spec = sampler::sample_spectral(N, grid, kMcPaths, kSeedSpectral, threads());
    const auto path = sampler::sample_pathwise(N, sampler::PathGrid::uniform(1024), kMcPaths, kSeedPathwise, threads(), 128);
    std::vector<int> idx;
    for (int j = 1; j < M; ++j) idx.push_back(j);
    const auto ms = sampler::ensemble_moments(spec, idx);
    const auto mp = sampler::ensemble_moments(path, idx);
    const int P = static_cast<int>(idx.size());
    double worst_spec = 0.0, worst_cross = 0.0;
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) {
            const double c = kernels::cov_CN(grid[idx[static_cast<std::size_t>(i)]], grid[idx[static_cast<std::size_t>(j)]],
                                             kernels::KernelConfig(N));
            worst_spec = std::max(worst_spec, std::abs(ms.c(i, j) - c) / ms.c_se(i, j));
            const double se = std::hypot(ms.c_se(i, j), mp.c_se(i, j));
            worst_cross = std::max(worst_cross, std::abs(ms.c(i, j) - mp.c(i, j)) / se);
        }
    std::ostringstream d;
    d << "max |emp - C_N|/SE = " << worst_spec << ", max |spectral - pathwise|/SE = " << worst_cross;
    return {worst_spec <= kSigmas && worst_cross <= kSigmas, d.str()};
}

Outcome ac10() {
    std::ostringstream d;
    bool ok = true;
    const sampler::PathGrid grid({0.0, 0.5, 1.0});
    std::uint64_t seed = kSeedFluct;
    for (int N : {16, 64, 256}) {
        const auto e = sampler::sample_spectral(N, grid, kMcPaths, seed++, threads());
        const auto rows = sampler::fluctuation_stats(e);
        const auto& r = rows[1];
        const double z = std::abs(r.emp_var - r.analytic_NCn) / r.emp_var_se;
        if (z > kSigmas) ok = false;
        d << "N=" << N << " emp=" << r.emp_var << " NC_N=" << r.analytic_NCn << " z=" << z << "; ";
    }
    const double lim = 2000 * kernels::cov_CN(0.5, 0.5, kernels::KernelConfig(2000));
    const double gap = std::abs(lim - 0.5 / std::numbers::pi);
    if (gap > kLimitTol) ok = false;
    d << "N=2000 NC_N=" << lim << " gap=" << gap;
    return {ok, d.str()};
}

Outcome ac11() {
    const double lo = std::numbers::pi / 6, hi = 5 * std::numbers::pi / 6;
    std::ostringstream d;
    bool ok = true;
    for (int kind = 0; kind < 2; ++kind) {
        const double bound = kind == 0 ? kDarbouxBoundLegendre : kDarbouxBoundIntegral;
        double first = 0.0;
        d << (kind == 0 ? "legendre:" : "integral:");
        for (int n : {50, 100, 200, 400}) {
            const auto apx = kind == 0 ? legendre::DarbouxApproximant::legendre(n, lo, hi)
                                       : legendre::DarbouxApproximant::integral(n, lo, hi);
            const double e = legendre::darboux_scaled_error(apx, kDarbouxThetaPoints);
            if (n == 50) first = e;
            if (e > bound || e > kDarbouxGrowth * first) ok = false;
            d << ' ' << e;
        }
        d << "; ";
    }
    return {ok, d.str()};
}

Outcome ac12() {
    std::ostringstream d;
    double prev = INFINITY;
    bool ok = true;
    for (int N : {100, 400, 1600}) {
        const double v = N * kernels::cov_CN(0.5, 0.5 + 1.0 / std::sqrt(N), kernels::KernelConfig(N));
        if (!(std::abs(v) < prev)) ok = false;
        prev = std::abs(v);
        d << "N=" << N << " value=" << v << "; ";
    }
    return {ok, d.str()};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"AC1 partial fractions", ac1},        {"AC2 Catalan identities", ac2},
        {"AC3 moment limits", ac3},            {"AC4 Hankel = Legendre covariance", ac4},
        {"AC5 Hankel inverse", ac5},           {"AC6 Christoffel-Darboux sums", ac6},
        {"AC7 semicircle pointwise", ac7},     {"AC8 derivative identity", ac8},
        {"AC9 Monte Carlo law", ac9},          {"AC10 fluctuation trend", ac10},
        {"AC11 Darboux asymptotics", ac11},    {"AC12 decorrelation", ac12},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %-36s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of 12 criteria passed\n", 12 - failed);
    return failed == 0 ? 0 : 1;
}
