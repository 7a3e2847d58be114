#include <kolmo/simd.hpp>

#include <stdexcept>

#if defined(KOLMO_HAVE_AVX2_TU) && defined(__AVX2__)
#include <immintrin.h>
#define KOLMO_AVX2_BODY 1
#endif

namespace kolmo::simd::avx2 {

#ifdef KOLMO_AVX2_BODY

namespace {

constexpr std::size_t kLanes = 4;

}  // namespace

void integral_pair_sums(std::span<const double> xs, std::span<const double> ys, int N,
                        std::span<double> out) {
    const bool compensated = N >= kCompensationThreshold;
    const std::size_t count = xs.size();
    const std::size_t blocked = count - count % kLanes;
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);

    for (std::size_t i = 0; i < blocked; i += kLanes) {
        const __m256d x = _mm256_loadu_pd(xs.data() + i);
        const __m256d y = _mm256_loadu_pd(ys.data() + i);
        __m256d ix_prev = _mm256_setzero_pd();
        __m256d iy_prev = _mm256_setzero_pd();
        __m256d ix = _mm256_mul_pd(half, _mm256_sub_pd(_mm256_mul_pd(x, x), one));
        __m256d iy = _mm256_mul_pd(half, _mm256_sub_pd(_mm256_mul_pd(y, y), one));
        __m256d sum = _mm256_setzero_pd();
        __m256d comp = _mm256_setzero_pd();
        for (int n = 1; n < N; ++n) {
            const __m256d w = _mm256_set1_pd(2.0 * n + 1.0);
            const __m256d term = _mm256_mul_pd(_mm256_mul_pd(w, ix), iy);
            if (compensated) {
                const __m256d yk = _mm256_sub_pd(term, comp);
                const __m256d t = _mm256_add_pd(sum, yk);
                comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), yk);
                sum = t;
            } else {
                sum = _mm256_add_pd(sum, term);
            }
            const __m256d a = _mm256_set1_pd((2.0 * n + 1.0) / (n + 2.0));
            const __m256d b = _mm256_set1_pd((n - 1.0) / (n + 2.0));
            const __m256d ix_next =
                _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(a, x), ix), _mm256_mul_pd(b, ix_prev));
            const __m256d iy_next =
                _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(a, y), iy), _mm256_mul_pd(b, iy_prev));
            ix_prev = ix;
            iy_prev = iy;
            ix = ix_next;
            iy = iy_next;
        }
        _mm256_storeu_pd(out.data() + i, sum);
    }
    if (blocked < count)
        scalar::integral_pair_sums(xs.subspan(blocked), ys.subspan(blocked), N, out.subspan(blocked));
}

void legendre_edge_products(std::span<const double> xs, int N, std::span<double> out) {
    const std::size_t count = xs.size();
    const std::size_t blocked = count - count % kLanes;
    for (std::size_t i = 0; i < blocked; i += kLanes) {
        const __m256d x = _mm256_loadu_pd(xs.data() + i);
        __m256d prev = _mm256_set1_pd(1.0);
        __m256d cur = x;
        for (int k = 1; k < N; ++k) {
            const __m256d a = _mm256_set1_pd((2.0 * k + 1.0) / (k + 1.0));
            const __m256d b = _mm256_set1_pd(k / (k + 1.0));
            const __m256d next =
                _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(a, x), cur), _mm256_mul_pd(b, prev));
            prev = cur;
            cur = next;
        }
        _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(prev, cur));
    }
    if (blocked < count)
        scalar::legendre_edge_products(xs.subspan(blocked), N, out.subspan(blocked));
}

#else

void integral_pair_sums(std::span<const double>, std::span<const double>, int, std::span<double>) {
    throw std::runtime_error("AVX2 kernels not compiled into this binary");
}

void legendre_edge_products(std::span<const double>, int, std::span<double>) {
    throw std::runtime_error("AVX2 kernels not compiled into this binary");
}

#endif

}  // namespace kolmo::simd::avx2
