#include <doctest.h>

#include <kolmo/kernels.hpp>
#include <kolmo/simd.hpp>

#include <cstdlib>
#include <random>

using namespace kolmo;

namespace {

std::vector<double> uniform(std::size_t n, double lo, double hi, unsigned seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(eng);
    return v;
}

struct IsaGuard {
    simd::Isa saved = simd::active_isa();
    ~IsaGuard() { simd::set_active_isa(saved); }
};

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("vector kernels are bit-identical to the scalar reference") {
    if (!simd::avx2_available()) {
        MESSAGE("AVX2 not available; scalar path only");
        return;
    }
    for (std::size_t count : {1u, 3u, 4u, 5u, 8u, 31u, 64u}) {
        const auto x = uniform(count, -1.0, 1.0, 11 + static_cast<unsigned>(count));
        const auto y = uniform(count, -1.0, 1.0, 97 + static_cast<unsigned>(count));
        std::vector<double> a(count), b(count);
        for (int N : {1, 2, 3, 17, 999, 1000, 2500}) {
            simd::scalar::integral_pair_sums(x, y, N, a);
            simd::avx2::integral_pair_sums(x, y, N, b);
            CHECK(a == b);
            simd::scalar::legendre_edge_products(x, N, a);
            simd::avx2::legendre_edge_products(x, N, b);
            CHECK(a == b);
        }
    }
}

TEST_CASE("edge cases: endpoints and empty batches") {
    const std::vector<double> x{-1.0, 1.0, 0.0, -1.0, 1.0};
    std::vector<double> a(5);
    simd::scalar::legendre_edge_products(x, 7, a);
    // P_6 P_7 at +-1 is +-1
    CHECK(a[0] == doctest::Approx(-1.0));
    CHECK(a[1] == doctest::Approx(1.0));
    CHECK(a[2] == 0.0);
    std::vector<double> none;
    CHECK_NOTHROW(simd::integral_pair_sums(none, none, 10, none));
    std::vector<double> wrong(2);
    CHECK_THROWS(simd::integral_pair_sums(x, x, 10, wrong));
}

TEST_CASE("dispatch can be forced to the scalar path") {
    IsaGuard guard;
    const auto x = uniform(13, 0.0, 1.0, 5);
    const auto y = uniform(13, 0.0, 1.0, 6);
    std::vector<double> a(13), b(13);
    simd::set_active_isa(simd::Isa::scalar);
    CHECK(simd::active_isa() == simd::Isa::scalar);
    kernels::cov_CN_batch(x, y, 400, a);
    if (simd::avx2_available()) {
        simd::set_active_isa(simd::Isa::avx2);
        CHECK(simd::name(simd::active_isa()) == "avx2");
    }
    kernels::cov_CN_batch(x, y, 400, b);
    CHECK(a == b);
}

TEST_CASE("environment override is honoured by detection") {
    ::setenv("KOLMO_SIMD", "scalar", 1);
    CHECK(simd::detected_isa() == simd::Isa::scalar);
    ::unsetenv("KOLMO_SIMD");
    CHECK(simd::detected_isa() == (simd::avx2_available() ? simd::Isa::avx2 : simd::Isa::scalar));
}

TEST_CASE("compensated summation keeps long sums accurate") {
    // For x = y the sum telescopes against the semicircle; compare the batch
    // result at large N with a long-double reference.
    const std::vector<double> x{0.37};
    std::vector<double> out(1);
    const int N = 20000;
    simd::integral_pair_sums(x, x, N, out);
    long double prev = 0.0L, cur = 0.5L * (0.37L * 0.37L - 1.0L), sum = 0.0L;
    for (int n = 1; n < N; ++n) {
        sum += (2.0L * n + 1.0L) * cur * cur;
        const long double next = ((2.0L * n + 1.0L) * 0.37L * cur - (n - 1.0L) * prev) / (n + 2.0L);
        prev = cur;
        cur = next;
    }
    CHECK(out[0] == doctest::Approx(static_cast<double>(sum)).epsilon(1e-13));
}

}
