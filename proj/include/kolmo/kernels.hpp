#pragma once

// Covariance C_N of the step-N loop, the rescaled kernel R_N, its diagonal
// S_N, the semicircle limit and the Christoffel-Darboux identities for the
// integral family I_n.
//
//   C_N(s,t) = min(s,t) - sum_{n<N} (2n+1) J_n(s) J_n(t),  J_n(s) = int_0^s Q_n
//   R_N(x,y) = N (min(1+x,1+y) - sum_{n<N} (2n+1)/2 I_n(x) I_n(y)),  I_0 -> 1+x
//   R_N(2s-1, 2t-1) = 2N C_N(s,t)

#include <kolmo/rational.hpp>

#include <span>
#include <utility>
#include <vector>

namespace kolmo::kernels {

struct KernelConfig {
    int N;
    bool exact = false;

    explicit KernelConfig(int N, bool exact = false);
};

/// S(x) = sqrt(1 - x^2) / pi and the matching fluctuation variance.
struct SemicircleDensity {
    double operator()(double x) const;
    /// sqrt(t (1 - t)) / pi, the limiting variance of sqrt(N) L_t.
    double variance(double t) const;
};

double cov_CN(double s, double t, const KernelConfig& cfg);
double R_N(double x, double y, const KernelConfig& cfg);
double S_N_diag(double x, int N);
double dSN_dx(double x, int N);

/// Batched versions over equal-length spans; dispatch to the SIMD kernels.
void cov_CN_batch(std::span<const double> s, std::span<const double> t, int N, std::span<double> out);
void R_N_batch(std::span<const double> x, std::span<const double> y, int N, std::span<double> out);
void S_N_batch(std::span<const double> x, int N, std::span<double> out);
void dSN_dx_batch(std::span<const double> x, int N, std::span<double> out);

/// Exact C_N at rational points from the exact integral polynomials.
Rational cov_CN_exact(int N, const Rational& s, const Rational& t);

/// D_{n+1}(x,y) by definition and by the one-step recursion from D_n, n >= 1.
std::pair<double, double> cd_pair(int n, double x, double y);
std::pair<Rational, Rational> cd_pair_exact(int n, const Rational& x, const Rational& y);

/// (x-y) sum_{n=1}^N (2n+1) I_n(x) I_n(y) == N D_{N+1} + 2 sum_{n=1}^N D_{n+1},
/// checked in rational arithmetic. Throws CapacityError past the exact cap.
bool cd_sum_check(int N, const Rational& x, const Rational& y);

/// R_N(x, y) for x != y from the telescoped tail
/// (x-y) sum_{n>=N} (2n+1) I_n I_n = 2 sum_{n>=N} D_{n+1} - (N-1) D_N,
/// truncated after `extra_terms` terms. Verification oracle only.
double R_N_tail_cd(double x, double y, int N, int extra_terms = 10000);

struct DecorrelationRow {
    int N;
    double beta;
    double t;
    double value;  // N * C_N(s, s + N^{-beta} t)
};

std::vector<DecorrelationRow> decorrelation_scan(double s, std::span<const double> t_offsets,
                                                 double beta, std::span<const int> N_list);

/// Inclusive equispaced grid with `count` points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int count);

/// Evaluates `what` on a grid, splitting the points across `threads` workers.
enum class GridKind { C, R, S };
struct GridPoint {
    double a;
    double b;  // unused for S
    double value;
};
std::vector<GridPoint> kernel_grid(GridKind what, int N, int count, int threads = 1);

}  // namespace kolmo::kernels
