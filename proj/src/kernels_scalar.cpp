#include <kolmo/simd.hpp>

namespace kolmo::simd::scalar {

void integral_pair_sums(std::span<const double> xs, std::span<const double> ys, int N,
                        std::span<double> out) {
    const bool compensated = N >= kCompensationThreshold;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const double y = ys[i];
        double ix_prev = 0.0, iy_prev = 0.0;
        double ix = 0.5 * (x * x - 1.0);
        double iy = 0.5 * (y * y - 1.0);
        double sum = 0.0, comp = 0.0;
        for (int n = 1; n < N; ++n) {
            const double term = (2.0 * n + 1.0) * ix * iy;
            if (compensated) {
                const double yk = term - comp;
                const double t = sum + yk;
                comp = (t - sum) - yk;
                sum = t;
            } else {
                sum = sum + term;
            }
            const double a = (2.0 * n + 1.0) / (n + 2.0);
            const double b = (n - 1.0) / (n + 2.0);
            const double ix_next = a * x * ix - b * ix_prev;
            const double iy_next = a * y * iy - b * iy_prev;
            ix_prev = ix;
            iy_prev = iy;
            ix = ix_next;
            iy = iy_next;
        }
        out[i] = sum;
    }
}

void legendre_edge_products(std::span<const double> xs, int N, std::span<double> out) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        double prev = 1.0;  // P_0
        double cur = x;     // P_1
        for (int k = 1; k < N; ++k) {
            const double a = (2.0 * k + 1.0) / (k + 1.0);
            const double b = k / (k + 1.0);
            const double next = a * x * cur - b * prev;
            prev = cur;
            cur = next;
        }
        out[i] = prev * cur;
    }
}

}  // namespace kolmo::simd::scalar
