#pragma once

// Loop covariance through the factorial Hankel matrix
//   V(t)_{kl} = (-1)^{l-1} t^{k+l-1} / (k+l-1)!
// and the conditioning polynomials alpha_l(t) = (V(t) V(1)^{-1})_{1l}.
// Everything here is exact; V(1) is far too ill-conditioned for doubles.

#include <kolmo/poly.hpp>
#include <kolmo/rational.hpp>

#include <vector>

namespace kolmo::hankel {

inline constexpr int kDefaultCap = 16;

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols);
    static RationalMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    // 1-based, matching the matrix formulas.
    Rational& at(int k, int l) { return data_[static_cast<std::size_t>((k - 1) * cols_ + (l - 1))]; }
    const Rational& at(int k, int l) const {
        return data_[static_cast<std::size_t>((k - 1) * cols_ + (l - 1))];
    }
    RationalMatrix transposed() const;

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

struct HankelSystem {
    int N = 0;
    RationalMatrix V1;
    RationalMatrix V1inv;     // closed binomial formula
    RationalMatrix expA;      // (e^A)_{kl} = 1/(k-l)!, k >= l
    RationalMatrix W;         // E[B_1 B_1^T] = V(1) (e^A)^T
    std::vector<RationalPoly> alphas;  // closed formula, index l-1
    std::vector<RationalPoly> w;       // w_l(t) = (1 - (1-t)^l) / l!
};

/// Builds and self-checks the system. Throws CapacityError for N > cap and
/// std::logic_error if an internal identity fails.
HankelSystem build_system(int N, int cap = kDefaultCap);

RationalMatrix V_at(int N, const Rational& t);
/// Closed-form inverse of V(1).
RationalMatrix V1_inverse_closed(int N);
/// alpha_l by the closed binomial formula, l in 1..N.
RationalPoly alpha_closed(int N, int l);
/// alpha_l as row 1 of V(t) V(1)^{-1}, with V1inv supplied by the caller.
RationalPoly alpha_matrix_route(int N, int l, const RationalMatrix& V1inv);
/// Sum_{j<N} A^j / j! for the subdiagonal shift A.
RationalMatrix expA_series(int N);

Rational alpha_eval(const HankelSystem& sys, int l, const Rational& t);

/// E[Z_s Z_t] for Z_t = B_t - sum_l alpha_l(t) B_1^{N,l}.
Rational cross_covariance(const HankelSystem& sys, const Rational& s, const Rational& t);
Rational cross_covariance(int N, const Rational& s, const Rational& t, int cap = kDefaultCap);

}  // namespace kolmo::hankel
