#pragma once

// Exact moment machinery for the rescaled diagonal kernel S_N.
//
//   m_{p,q}^k = (p+q+1) * integral over [-1,1] of x^{2k} I_p(x) I_q(x)
//
// admits the partial fraction form
//
//   m_{n-a,n+a}^k = sum_l b_{a,k}^l / (2n-2l-1) - sum_l b_{a,k}^l / (2n+2l+3)
//
// whose coefficients b are produced by a recurrence in k. The weighted sums
// B_{a,k} = sum_l (l+1) b_{a,k}^l form a Catalan triangle after scaling by 4^k.

#include <kolmo/legendre.hpp>
#include <kolmo/rational.hpp>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace kolmo::moments {

struct MomentKey {
    static constexpr int kDefaultMaxOrder = 12;

    int p;
    int q;
    int k;

    MomentKey(int p, int q, int k, int max_order = kDefaultMaxOrder);
};

/// Direct route: expand the exact polynomials and integrate term by term.
GaussRational moment_oracle(const MomentKey& key,
                            const legendre::ExactTable& table = legendre::ExactTable::shared());

/// Four-term recursion in k grounded at oracle values for k = 0.
/// Keys whose recursion tree meets p+q in {1, -3} at an order k >= 1 throw
/// SingularDenominatorError; keys with p+q even never do.
GaussRational moment_recursed(const MomentKey& key);

/// Partial fraction coefficients b_{a,k}^l computed by the recurrence in k.
/// Tables are filled on demand and are safe to query from several threads.
class CoeffTable {
public:
    static constexpr int kDefaultMaxA = 12;
    static constexpr int kDefaultMaxK = 12;

    explicit CoeffTable(int max_a = kDefaultMaxA, int max_k = kDefaultMaxK);

    /// b_{|a|,k}^0 .. b_{|a|,k}^k. Throws CapacityError beyond the caps.
    std::vector<Rational> coeffs(int a, int k) const;
    /// Single coefficient; zero when l < 0 or l > k.
    Rational b(int a, int k, int l) const;
    /// d_{a,k}^c: -sum_l b_{a,k}^l/(l+1) for c = 0, and b_{a,k}^{c-1}/(2c) otherwise.
    Rational d(int a, int k, int c) const;

    int max_a() const { return max_a_; }
    int max_k() const { return max_k_; }

    static const CoeffTable& shared();

private:
    const std::vector<Rational>& row_locked(int a, int k) const;
    std::vector<Rational> compute_row(int a, int k) const;
    Rational b_locked(int a, int k, int l) const;

    int max_a_;
    int max_k_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, int>, std::vector<Rational>> rows_;
};

std::vector<Rational> pfd_coeffs(int a, int k);

/// Second, independent route to b_{a,k}: solve the partial fraction identity
/// against oracle moments at k+3 distinct n (exact Gaussian elimination).
/// Throws std::runtime_error if the overdetermined system is inconsistent.
std::vector<Rational> pfd_coeffs_by_solve(int a, int k);

/// Right-hand side of the partial fraction identity, using b_{|a|,k}.
Rational pfd_eval(int a, int k, int n);
Rational pfd_eval(const std::vector<Rational>& b, int n);

/// sum_l (l+1) b_{a,k}^l from the coefficient table.
Rational B_from_table(int a, int k);
/// Closed binomial form; B_{0,0} = 1.
Rational B_closed(int a, int k);
/// (1/4, 1/2, 1/4) recursion in k grounded at the k = 0 row.
Rational B_recursed(int a, int k);

Integer catalan(unsigned k);
/// 4^{-k} C_k / 2, the 2k-th moment of the semicircle sqrt(1-x^2)/pi.
Rational semicircle_even_moment(unsigned k);

/// 2k-th moment of S_N over [-1,1], summing partial fraction moments over n.
Rational sn_even_moment_exact(int k, int N);
/// Same quantity by the telescoped closed tail
/// (N/2) sum_l sum_{n=1}^{2l+2} b_{0,k}^l / (2N+2n-2l-3).
Rational sn_even_moment_tail(int k, int N);
/// (2k+1)-th moment of S_N. Even-power parts cancel, and every I_n^2 term is
/// even, so the result is exactly zero; computed from the same decomposition.
Rational sn_odd_moment_exact(int k, int N);
/// Constant c_k with |sn_even_moment_exact(k,N) - semicircle_even_moment(k)| <= c_k/N
/// for N >= 2k+1.
Rational sn_moment_gap_constant(int k);

/// Checks sum_l (1/(2l+1) + 1/(2l+3)) b_{0,k}^l == 2/(2k+1) - 2/(2k+3).
bool idat0_check(int k);

}  // namespace kolmo::moments
