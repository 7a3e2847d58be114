#include <kolmo/sampler.hpp>

#include <kolmo/errors.hpp>
#include <kolmo/kernels.hpp>
#include <kolmo/legendre.hpp>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>

namespace kolmo::sampler {

PathGrid::PathGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.size() < 2) throw DomainError("grid needs at least two times");
    if (times_.front() != 0.0 || times_.back() != 1.0) throw DomainError("grid must run from 0 to 1");
    for (std::size_t j = 1; j < times_.size(); ++j)
        if (!(times_[j] > times_[j - 1])) throw DomainError("grid times must increase strictly");
}

PathGrid PathGrid::uniform(int M) {
    if (M < 1) throw DomainError("grid needs M >= 1 intervals");
    std::vector<double> t(static_cast<std::size_t>(M + 1));
    for (int j = 0; j <= M; ++j) t[static_cast<std::size_t>(j)] = static_cast<double>(j) / M;
    return PathGrid(std::move(t));
}

namespace {

void check_common(int N, int R) {
    if (N < 1) throw DomainError("N must be >= 1");
    if (R < 2) throw DomainError("need at least two paths");
}

std::mt19937_64 path_engine(std::uint64_t seed, int r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    return std::mt19937_64(seq);
}

// Runs body(r) for r in [0, R), contiguous blocks per worker.
void for_paths(int R, int threads, const std::function<void(int)>& body) {
    const int workers = std::clamp(threads, 1, R);
    if (workers == 1) {
        for (int r = 0; r < R; ++r) body(r);
        return;
    }
    std::vector<std::thread> pool;
    const int chunk = (R + workers - 1) / workers;
    for (int begin = 0; begin < R; begin += chunk) {
        const int end = std::min(R, begin + chunk);
        pool.emplace_back([&body, begin, end] {
            for (int r = begin; r < end; ++r) body(r);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

LoopEnsemble sample_spectral(int N, const PathGrid& grid, int R, std::uint64_t seed, int threads) {
    check_common(N, R);
    const int M = grid.M();
    const int P = M - 1;  // interior points
    LoopEnsemble e;
    e.N = N;
    e.grid = grid;
    e.seed = seed;
    e.method = Method::spectral;
    e.R = R;
    e.paths.assign(static_cast<std::size_t>(R) * static_cast<std::size_t>(M + 1), 0.0);
    if (P == 0) return e;

    Eigen::MatrixXd K(P, P);
    {
        std::vector<double> s, t, out(static_cast<std::size_t>(P * P));
        for (int i = 0; i < P; ++i)
            for (int j = 0; j < P; ++j) {
                s.push_back(grid[i + 1]);
                t.push_back(grid[j + 1]);
            }
        kernels::cov_CN_batch(s, t, N, out);
        for (int i = 0; i < P; ++i)
            for (int j = 0; j < P; ++j) K(i, j) = out[static_cast<std::size_t>(i * P + j)];
        K = 0.5 * (K + K.transpose());
    }
    const double scale = std::max(K.diagonal().maxCoeff(), 1e-300);
    Eigen::LLT<Eigen::MatrixXd> llt;
    double jitter = 0.0;
    for (;;) {
        Eigen::MatrixXd Kj = K;
        Kj.diagonal().array() += jitter * scale;
        llt.compute(Kj);
        if (llt.info() == Eigen::Success) break;
        if (jitter >= kJitterMax)
            throw FactorizationError("interior covariance not positive definite for N = " +
                                         std::to_string(N) + ", M = " + std::to_string(M),
                                     jitter);
        jitter = jitter == 0.0 ? kJitterStart : jitter * 10.0;
    }
    e.jitter = jitter;
    const Eigen::MatrixXd L = llt.matrixL();

    for_paths(R, threads, [&](int r) {
        auto eng = path_engine(seed, r);
        std::normal_distribution<double> normal;
        Eigen::VectorXd z(P);
        for (int i = 0; i < P; ++i) z(i) = normal(eng);
        const Eigen::VectorXd x = L * z;
        double* row = e.paths.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(M + 1);
        for (int i = 0; i < P; ++i) row[i + 1] = x(i);
    });
    return e;
}

LoopEnsemble sample_pathwise(int N, const PathGrid& grid, int R, std::uint64_t seed, int threads,
                             int record_stride) {
    check_common(N, R);
    const int M = grid.M();
    if (record_stride < 1 || M % record_stride != 0)
        throw DomainError("record stride must divide the number of grid intervals");
    const int Mrec = M / record_stride;

    std::vector<double> rec_times;
    for (int j = 0; j <= M; j += record_stride) rec_times.push_back(grid[j]);

    // Q_n at left endpoints, J_n at recorded times.
    std::vector<double> q(static_cast<std::size_t>(N) * static_cast<std::size_t>(M));
    for (int n = 0; n < N; ++n)
        for (int j = 0; j < M; ++j)
            q[static_cast<std::size_t>(n) * static_cast<std::size_t>(M) + static_cast<std::size_t>(j)] =
                legendre::eval_Q(n, grid[j]);
    std::vector<double> J(static_cast<std::size_t>(N) * static_cast<std::size_t>(Mrec + 1));
    for (int n = 0; n < N; ++n)
        for (int j = 0; j <= Mrec; ++j)
            J[static_cast<std::size_t>(n * (Mrec + 1) + j)] =
                (2.0 * n + 1.0) * legendre::shifted_integral(n, rec_times[static_cast<std::size_t>(j)]);

    LoopEnsemble e;
    e.N = N;
    e.grid = PathGrid(rec_times);
    e.seed = seed;
    e.method = Method::pathwise;
    e.R = R;
    e.paths.assign(static_cast<std::size_t>(R) * static_cast<std::size_t>(Mrec + 1), 0.0);
    e.xi.assign(static_cast<std::size_t>(R) * static_cast<std::size_t>(N), 0.0);

    std::vector<double> sd(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) sd[static_cast<std::size_t>(j)] = std::sqrt(grid[j + 1] - grid[j]);

    for_paths(R, threads, [&](int r) {
        auto eng = path_engine(seed, r);
        std::normal_distribution<double> normal;
        double* row = e.paths.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(Mrec + 1);
        double* xi = e.xi.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(N);
        std::vector<double> dB(static_cast<std::size_t>(M));
        double b = 0.0;
        for (int j = 0; j < M; ++j) {
            dB[static_cast<std::size_t>(j)] = sd[static_cast<std::size_t>(j)] * normal(eng);
            b += dB[static_cast<std::size_t>(j)];
            if ((j + 1) % record_stride == 0) row[(j + 1) / record_stride] = b;
        }
        for (int n = 0; n < N; ++n) {
            const double* qn = q.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(M);
            double acc = 0.0;
            for (int j = 0; j < M; ++j) acc += qn[j] * dB[static_cast<std::size_t>(j)];
            xi[n] = acc;
        }
        for (int j = 1; j <= Mrec; ++j) {
            double corr = 0.0;
            for (int n = 0; n < N; ++n) corr += J[static_cast<std::size_t>(n * (Mrec + 1) + j)] * xi[n];
            row[j] -= corr;
        }
        row[0] = 0.0;
    });
    return e;
}

EmpiricalMoments empirical_moments(std::span<const double> samples, int R, int width,
                                   std::span<const int> index) {
    if (R < 2) throw DomainError("need at least two samples");
    if (samples.size() != static_cast<std::size_t>(R) * static_cast<std::size_t>(width))
        throw std::invalid_argument("sample matrix has the wrong size");
    const int P = static_cast<int>(index.size());
    for (int c : index)
        if (c < 0 || c >= width) throw IndexError("column index out of range");

    EmpiricalMoments m;
    m.P = P;
    m.mean.resize(static_cast<std::size_t>(P));
    m.mean_se.resize(static_cast<std::size_t>(P));
    m.cov.assign(static_cast<std::size_t>(P * P), 0.0);
    m.cov_se.assign(static_cast<std::size_t>(P * P), 0.0);

    // columns, centred
    std::vector<std::vector<double>> col(static_cast<std::size_t>(P), std::vector<double>(static_cast<std::size_t>(R)));
    std::vector<double> scratch(static_cast<std::size_t>(R));
    const double invR = 1.0 / R;
    for (int i = 0; i < P; ++i) {
        auto& v = col[static_cast<std::size_t>(i)];
        for (int r = 0; r < R; ++r)
            v[static_cast<std::size_t>(r)] =
                samples[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) + static_cast<std::size_t>(index[static_cast<std::size_t>(i)])];
        const double mu = pairwise_sum(v) * invR;
        m.mean[static_cast<std::size_t>(i)] = mu;
        for (double& x : v) x -= mu;
    }
    for (int i = 0; i < P; ++i)
        for (int j = i; j < P; ++j) {
            const auto& a = col[static_cast<std::size_t>(i)];
            const auto& b = col[static_cast<std::size_t>(j)];
            for (int r = 0; r < R; ++r)
                scratch[static_cast<std::size_t>(r)] = a[static_cast<std::size_t>(r)] * b[static_cast<std::size_t>(r)];
            const double mean_prod = pairwise_sum(scratch) * invR;
            for (double& x : scratch) x = (x - mean_prod) * (x - mean_prod);
            const double var_prod = pairwise_sum(scratch) / (R - 1);
            const double cov = mean_prod * R / (R - 1);
            const double se = std::sqrt(var_prod * invR);
            m.cov[static_cast<std::size_t>(i * P + j)] = m.cov[static_cast<std::size_t>(j * P + i)] = cov;
            m.cov_se[static_cast<std::size_t>(i * P + j)] = m.cov_se[static_cast<std::size_t>(j * P + i)] = se;
        }
    for (int i = 0; i < P; ++i)
        m.mean_se[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, m.c(i, i)) * invR);
    return m;
}

EmpiricalMoments ensemble_moments(const LoopEnsemble& e, std::span<const int> grid_index) {
    return empirical_moments(e.paths, e.R, e.grid.M() + 1, grid_index);
}

EmpiricalMoments xi_moments(const LoopEnsemble& e) {
    if (e.method != Method::pathwise) throw DomainError("xi coefficients exist only for pathwise ensembles");
    std::vector<int> idx(static_cast<std::size_t>(e.N));
    for (int n = 0; n < e.N; ++n) idx[static_cast<std::size_t>(n)] = n;
    return empirical_moments(e.xi, e.R, e.N, idx);
}

std::vector<FluctuationRow> fluctuation_stats(const LoopEnsemble& e) {
    if (e.method != Method::spectral) throw DomainError("fluctuation statistics need a spectral ensemble");
    std::vector<int> idx;
    for (int j = 0; j <= e.grid.M(); ++j) idx.push_back(j);
    const auto m = ensemble_moments(e, idx);
    const kernels::KernelConfig cfg(e.N);
    std::vector<FluctuationRow> rows;
    for (int j = 0; j <= e.grid.M(); ++j) {
        const double t = e.grid[j];
        rows.push_back({e.N, t, e.N * m.c(j, j), e.N * m.c_se(j, j), e.N * kernels::cov_CN(t, t, cfg),
                        kernels::SemicircleDensity{}.variance(t)});
    }
    return rows;
}

Correlation fluctuation_correlation(const LoopEnsemble& e, int i, int j) {
    const int idx[2] = {i, j};
    const auto m = ensemble_moments(e, idx);
    const double denom = std::sqrt(m.c(0, 0) * m.c(1, 1));
    if (denom == 0.0) throw DomainError("correlation undefined at a pinned time");
    const double rho = m.c(0, 1) / denom;
    return {rho, (1.0 - rho * rho) / std::sqrt(static_cast<double>(e.R))};
}

}  // namespace kolmo::sampler
