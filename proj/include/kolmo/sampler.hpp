#pragma once

// Monte Carlo draws of the step-N loop on a time grid.
//
// spectral: Cholesky factor of the interior-grid covariance C_N times
//           standard normals, endpoints pinned at 0.
// pathwise: Brownian increments, xi_n = sum_j Q_n(t_j) dB_j (left endpoint,
//           Ito), then L_t = B_t - sum_n (2n+1) J_n(t) xi_n.
//
// Path r draws from its own std::mt19937_64 seeded with (seed, r), so an
// ensemble does not depend on how paths are spread over threads.

#include <cstdint>
#include <span>
#include <vector>

namespace kolmo::sampler {

class PathGrid {
public:
    /// times must start at exactly 0, end at exactly 1 and increase strictly.
    explicit PathGrid(std::vector<double> times);
    static PathGrid uniform(int M);

    int M() const { return static_cast<int>(times_.size()) - 1; }
    const std::vector<double>& times() const { return times_; }
    double operator[](int j) const { return times_[static_cast<std::size_t>(j)]; }

private:
    std::vector<double> times_;
};

enum class Method { spectral, pathwise };

struct LoopEnsemble {
    int N = 0;
    PathGrid grid = PathGrid::uniform(1);  // recorded times
    std::uint64_t seed = 0;
    Method method = Method::spectral;
    int R = 0;
    std::vector<double> paths;  // R x (grid.M()+1), row-major
    std::vector<double> xi;     // pathwise only: R x N Ito coefficients
    double jitter = 0.0;        // spectral only: diagonal shift that was needed

    double value(int r, int j) const {
        return paths[static_cast<std::size_t>(r) * static_cast<std::size_t>(grid.M() + 1) +
                     static_cast<std::size_t>(j)];
    }
};

inline constexpr double kJitterStart = 1e-15;
inline constexpr double kJitterMax = 1e-12;

LoopEnsemble sample_spectral(int N, const PathGrid& grid, int R, std::uint64_t seed, int threads = 1);

/// Simulates on `grid` but records only every `record_stride`-th time
/// (M must be divisible by it); the full path is never stored.
LoopEnsemble sample_pathwise(int N, const PathGrid& grid, int R, std::uint64_t seed, int threads = 1,
                             int record_stride = 1);

/// Sample moments with standard errors. cov is P x P row-major, unbiased;
/// the SE of each entry comes from the spread of the centred products.
struct EmpiricalMoments {
    int P = 0;
    std::vector<double> mean;
    std::vector<double> mean_se;
    std::vector<double> cov;
    std::vector<double> cov_se;

    double c(int i, int j) const { return cov[static_cast<std::size_t>(i * P + j)]; }
    double c_se(int i, int j) const { return cov_se[static_cast<std::size_t>(i * P + j)]; }
};

/// Moments of the columns `index` of an R x width row-major sample matrix.
EmpiricalMoments empirical_moments(std::span<const double> samples, int R, int width,
                                   std::span<const int> index);
/// Moments at the given grid indices of an ensemble.
EmpiricalMoments ensemble_moments(const LoopEnsemble& e, std::span<const int> grid_index);
/// Moments of the pathwise xi coefficients; expected cov is diag(1/(2n+1)).
EmpiricalMoments xi_moments(const LoopEnsemble& e);

struct FluctuationRow {
    int N;
    double t;
    double emp_var;      // variance of sqrt(N) L_t
    double emp_var_se;
    double analytic_NCn; // N C_N(t, t)
    double semicircle;   // sqrt(t(1-t)) / pi
};

std::vector<FluctuationRow> fluctuation_stats(const LoopEnsemble& e);

struct Correlation {
    double value;
    double se;  // delta-method approximation (1 - rho^2) / sqrt(R)
};
Correlation fluctuation_correlation(const LoopEnsemble& e, int i, int j);

/// Pairwise (cascade) sum; fixed association order for a given length.
double pairwise_sum(std::span<const double> v);

}  // namespace kolmo::sampler
