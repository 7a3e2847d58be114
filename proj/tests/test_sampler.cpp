#include <doctest.h>

#include <kolmo/errors.hpp>
#include <kolmo/kernels.hpp>
#include <kolmo/sampler.hpp>

#include <cmath>
#include <numeric>

using namespace kolmo;
using namespace kolmo::sampler;

TEST_SUITE("sampler") {

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(PathGrid({0.0}), DomainError);
    CHECK_THROWS_AS(PathGrid({0.1, 1.0}), DomainError);
    CHECK_THROWS_AS(PathGrid({0.0, 0.9}), DomainError);
    CHECK_THROWS_AS(PathGrid({0.0, 0.5, 0.5, 1.0}), DomainError);
    CHECK_THROWS_AS(PathGrid::uniform(0), DomainError);
    const auto g = PathGrid::uniform(4);
    CHECK(g.M() == 4);
    CHECK(g[2] == 0.5);
    CHECK(g[4] == 1.0);
}

TEST_CASE("argument validation") {
    const auto g = PathGrid::uniform(8);
    CHECK_THROWS_AS(sample_spectral(0, g, 10, 1), DomainError);
    CHECK_THROWS_AS(sample_spectral(2, g, 1, 1), DomainError);
    CHECK_THROWS_AS(sample_pathwise(2, g, 10, 1, 1, 3), DomainError);
    const auto spec = sample_spectral(2, g, 10, 1);
    CHECK_THROWS_AS(xi_moments(spec), DomainError);
    const auto path = sample_pathwise(2, g, 10, 1);
    CHECK_THROWS_AS(fluctuation_stats(path), DomainError);
    CHECK_THROWS_AS(fluctuation_correlation(spec, 0, 4), DomainError);
}

TEST_CASE("ensembles do not depend on the thread count") {
    const auto g = PathGrid::uniform(16);
    for (auto method : {Method::spectral, Method::pathwise}) {
        const auto a = method == Method::spectral ? sample_spectral(5, g, 37, 42, 1) : sample_pathwise(5, g, 37, 42, 1);
        const auto b = method == Method::spectral ? sample_spectral(5, g, 37, 42, 3) : sample_pathwise(5, g, 37, 42, 3);
        CHECK(a.paths == b.paths);
        CHECK(a.xi == b.xi);
        const auto c = method == Method::spectral ? sample_spectral(5, g, 37, 43, 1) : sample_pathwise(5, g, 37, 43, 1);
        CHECK(a.paths != c.paths);
    }
}

TEST_CASE("paths are pinned") {
    const auto g = PathGrid::uniform(8);
    const auto s = sample_spectral(3, g, 50, 7);
    const auto p = sample_pathwise(3, g, 50, 7);
    for (int r = 0; r < 50; ++r) {
        CHECK(s.value(r, 0) == 0.0);
        CHECK(s.value(r, 8) == 0.0);
        CHECK(p.value(r, 0) == 0.0);
        // pathwise end value is zero up to rounding
        CHECK(std::abs(p.value(r, 8)) < 1e-12);
    }
}

TEST_CASE("spectral midpoint variance for the bridge") {
    const auto e = sample_spectral(1, PathGrid::uniform(2), 40000, 3);
    const int idx[] = {1};
    const auto m = ensemble_moments(e, idx);
    CHECK(std::abs(m.c(0, 0) - 0.25) <= 4.5 * m.c_se(0, 0));
    CHECK(std::abs(m.mean[0]) <= 4.5 * m.mean_se[0]);
}

TEST_CASE("spectral covariance matches C_N") {
    const int N = 3;
    const auto g = PathGrid::uniform(4);
    const auto e = sample_spectral(N, g, 30000, 11, 2);
    const int idx[] = {1, 2, 3};
    const auto m = ensemble_moments(e, idx);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(m.mean[static_cast<std::size_t>(i)]) <= 4.5 * m.mean_se[static_cast<std::size_t>(i)]);
        for (int j = 0; j < 3; ++j) {
            const double c = kernels::cov_CN(g[idx[i]], g[idx[j]], kernels::KernelConfig(N));
            CHECK(std::abs(m.c(i, j) - c) <= 4.5 * m.c_se(i, j));
        }
    }
}

TEST_CASE("pathwise coefficients are uncorrelated with variance 1/(2n+1)") {
    const int N = 4;
    const auto e = sample_pathwise(N, PathGrid::uniform(256), 20000, 5, 2);
    const auto m = xi_moments(e);
    REQUIRE(m.P == N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const double expected = i == j ? 1.0 / (2 * i + 1) : 0.0;
            // discretisation bias of the left-endpoint sums is O(1/M)
            CHECK(std::abs(m.c(i, j) - expected) <= 4.5 * m.c_se(i, j) + 2.0 / 256);
        }
}

TEST_CASE("recording stride keeps the recorded times") {
    const auto e = sample_pathwise(2, PathGrid::uniform(64), 10, 9, 1, 16);
    CHECK(e.grid.M() == 4);
    CHECK(e.grid[1] == 0.25);
    CHECK(e.paths.size() == 50u);
    const auto full = sample_pathwise(2, PathGrid::uniform(64), 10, 9, 1, 1);
    for (int r = 0; r < 10; ++r)
        for (int j = 0; j <= 4; ++j) CHECK(e.value(r, j) == full.value(r, 16 * j));
}

TEST_CASE("empirical moments of a known matrix") {
    const std::vector<double> s{1, 2, 3, 5, 5, 8};  // R = 3, width = 2
    const int idx[] = {0, 1};
    const auto m = empirical_moments(s, 3, 2, idx);
    CHECK(m.mean[0] == doctest::Approx(3.0));
    CHECK(m.mean[1] == doctest::Approx(5.0));
    CHECK(m.c(0, 0) == doctest::Approx(4.0));
    CHECK(m.c(1, 1) == doctest::Approx(9.0));
    CHECK(m.c(0, 1) == doctest::Approx(6.0));
    const int bad[] = {2};
    CHECK_THROWS_AS(empirical_moments(s, 3, 2, bad), IndexError);
    CHECK_THROWS(empirical_moments(s, 4, 2, idx));
}

TEST_CASE("pairwise sum") {
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
    std::vector<double> v(1000);
    std::iota(v.begin(), v.end(), 1.0);
    CHECK(pairwise_sum(v) == 500500.0);
    std::vector<double> tiny(1 << 20, 0.1);
    CHECK(std::abs(pairwise_sum(tiny) - 0.1 * (1 << 20)) < 1e-6);
}

TEST_CASE("fluctuation statistics") {
    const auto e = sample_spectral(8, PathGrid({0.0, 0.25, 0.5, 1.0}), 20000, 2);
    const auto rows = fluctuation_stats(e);
    REQUIRE(rows.size() == 4u);
    CHECK(rows.front().emp_var == 0.0);
    CHECK(rows.back().emp_var == 0.0);
    for (const auto& r : rows) {
        CHECK(r.N == 8);
        CHECK(std::abs(r.emp_var - r.analytic_NCn) <= 4.5 * r.emp_var_se + 1e-15);
    }
    CHECK(rows[2].semicircle == doctest::Approx(0.5 / M_PI));
    const auto c = fluctuation_correlation(e, 1, 2);
    CHECK(std::abs(c.value) < 1.0);
    CHECK(c.se > 0.0);
}

}
