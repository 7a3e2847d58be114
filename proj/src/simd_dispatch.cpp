#include <kolmo/simd.hpp>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace kolmo::simd {

namespace {

std::atomic<int> g_active{-1};

void check_sizes(std::size_t a, std::size_t b, std::size_t c) {
    if (a != b || a != c) throw std::invalid_argument("kernel spans differ in length");
}

}  // namespace

std::string_view name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(KOLMO_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa detected_isa() {
    if (const char* env = std::getenv("KOLMO_SIMD"); env && std::string(env) == "scalar")
        return Isa::scalar;
    return avx2_available() ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() {
    int v = g_active.load(std::memory_order_relaxed);
    if (v < 0) {
        v = static_cast<int>(detected_isa());
        g_active.store(v, std::memory_order_relaxed);
    }
    return static_cast<Isa>(v);
}

void set_active_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_available())
        throw std::runtime_error("AVX2 requested but not available");
    g_active.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void integral_pair_sums(std::span<const double> xs, std::span<const double> ys, int N,
                        std::span<double> out) {
    check_sizes(xs.size(), ys.size(), out.size());
    if (active_isa() == Isa::avx2)
        avx2::integral_pair_sums(xs, ys, N, out);
    else
        scalar::integral_pair_sums(xs, ys, N, out);
}

void legendre_edge_products(std::span<const double> xs, int N, std::span<double> out) {
    check_sizes(xs.size(), out.size(), out.size());
    if (active_isa() == Isa::avx2)
        avx2::legendre_edge_products(xs, N, out);
    else
        scalar::legendre_edge_products(xs, N, out);
}

}  // namespace kolmo::simd
