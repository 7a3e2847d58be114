#pragma once

// Runtime selection between the scalar reference kernels and their AVX2
// counterparts. Both variants perform the same operations in the same order
// (no fused multiply-add), so their results are bit-identical.

#include <span>
#include <string_view>

namespace kolmo::simd {

enum class Isa { scalar, avx2 };

std::string_view name(Isa isa);

/// Whether this binary carries the AVX2 kernels and the CPU can run them.
bool avx2_available();

/// Best available ISA, unless the environment variable KOLMO_SIMD=scalar
/// asks for the reference path.
Isa detected_isa();

/// ISA used by the dispatching kernels. Defaults to detected_isa().
Isa active_isa();
/// Overrides the active ISA (tests use this). Requesting avx2 on a machine
/// without it throws std::runtime_error.
void set_active_isa(Isa isa);

/// Partial sums T(x, y) = sum_{n=1}^{N-1} (2n+1) I_n(x) I_n(y) for each pair.
/// Kahan-compensated once N >= kCompensationThreshold.
inline constexpr int kCompensationThreshold = 1000;

namespace scalar {
void integral_pair_sums(std::span<const double> xs, std::span<const double> ys, int N,
                        std::span<double> out);
/// P_{N-1}(x) P_N(x) for each x.
void legendre_edge_products(std::span<const double> xs, int N, std::span<double> out);
}  // namespace scalar

namespace avx2 {
void integral_pair_sums(std::span<const double> xs, std::span<const double> ys, int N,
                        std::span<double> out);
void legendre_edge_products(std::span<const double> xs, int N, std::span<double> out);
}  // namespace avx2

/// Dispatching entry points.
void integral_pair_sums(std::span<const double> xs, std::span<const double> ys, int N,
                        std::span<double> out);
void legendre_edge_products(std::span<const double> xs, int N, std::span<double> out);

}  // namespace kolmo::simd
