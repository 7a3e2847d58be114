#include <kolmo/moments.hpp>

#include <kolmo/errors.hpp>

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <tuple>

namespace kolmo::moments {

namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }

}  // namespace

MomentKey::MomentKey(int p_, int q_, int k_, int max_order) : p(p_), q(q_), k(k_) {
    if (k < 0) throw DomainError("moment order k must be nonnegative");
    if (k > max_order)
        throw CapacityError("moment order " + std::to_string(k) + " exceeds cap " +
                            std::to_string(max_order));
}

GaussRational moment_oracle(const MomentKey& key, const legendre::ExactTable& table) {
    const GaussRationalPoly product =
        table.I(key.p) * table.I(key.q) * GaussRationalPoly{RationalPoly::monomial(2 * key.k), {}};
    return Rational(key.p + key.q + 1) * product.integral_sym();
}

GaussRational moment_recursed(const MomentKey& key) {
    std::map<std::tuple<int, int, int>, GaussRational> memo;
    std::function<GaussRational(int, int, int)> rec = [&](int p, int q_, int k) -> GaussRational {
        if (k == 0) return moment_oracle(MomentKey(p, q_, 0));
        if (p + q_ + 1 == 0) return {};
        const auto id = std::make_tuple(p, q_, k);
        if (auto it = memo.find(id); it != memo.end()) return it->second;
        if (p + q_ + 3 == 0 || p + q_ - 1 == 0)
            throw SingularDenominatorError("moment recursion hits p+q = " + std::to_string(p + q_) +
                                           " at order " + std::to_string(k));
        const Rational s = p + q_ + 1;
        const Rational den = Rational((2 * p + 1) * (2 * q_ + 1));
        GaussRational out = (s * (p + 2) * (q_ + 2) / (den * (p + q_ + 3))) * rec(p + 1, q_ + 1, k - 1);
        out = out + (s * (p - 1) * (q_ - 1) / (den * (p + q_ - 1))) * rec(p - 1, q_ - 1, k - 1);
        out = out + (Rational((p + 2) * (q_ - 1)) / den) * rec(p + 1, q_ - 1, k - 1);
        out = out + (Rational((p - 1) * (q_ + 2)) / den) * rec(p - 1, q_ + 1, k - 1);
        memo.emplace(id, out);
        return out;
    };
    return rec(key.p, key.q, key.k);
}

CoeffTable::CoeffTable(int max_a, int max_k) : max_a_(max_a), max_k_(max_k) {
    if (max_a < 0 || max_k < 0) throw std::invalid_argument("negative coefficient table cap");
}

const CoeffTable& CoeffTable::shared() {
    static const CoeffTable table;
    return table;
}

std::vector<Rational> CoeffTable::coeffs(int a, int k) const {
    a = std::abs(a);
    if (k < 0) throw DomainError("k must be nonnegative");
    if (a > max_a_ || k > max_k_)
        throw CapacityError("coefficient (a=" + std::to_string(a) + ", k=" + std::to_string(k) +
                            ") exceeds table caps");
    std::lock_guard lock(mutex_);
    return row_locked(a, k);
}

Rational CoeffTable::b(int a, int k, int l) const {
    if (l < 0 || l > k) return 0;
    return coeffs(a, k)[static_cast<std::size_t>(l)];
}

Rational CoeffTable::d(int a, int k, int c) const {
    const auto row = coeffs(a, k);
    if (c == 0) {
        Rational acc = 0;
        for (std::size_t l = 0; l < row.size(); ++l) acc -= row[l] / Rational(static_cast<long>(l) + 1);
        return acc;
    }
    if (c < 0) throw DomainError("d index must be nonnegative");
    if (c - 1 > k) return 0;
    return row[static_cast<std::size_t>(c - 1)] / Rational(2 * c);
}

const std::vector<Rational>& CoeffTable::row_locked(int a, int k) const {
    const auto id = std::make_pair(a, k);
    if (auto it = rows_.find(id); it != rows_.end()) return it->second;
    auto row = compute_row(a, k);
    return rows_.emplace(id, std::move(row)).first->second;
}

Rational CoeffTable::b_locked(int a, int k, int l) const {
    a = std::abs(a);
    if (l < 0 || l > k) return 0;
    return row_locked(a, k)[static_cast<std::size_t>(l)];
}

std::vector<Rational> CoeffTable::compute_row(int a, int k) const {
    std::vector<Rational> row(static_cast<std::size_t>(k) + 1);
    if (k == 0) {
        if (a == 0) row[0] = 1;
        if (a == 1) row[0] = q(-1, 2);
        return row;
    }
    const int km = k - 1;
    auto prev = [&](int aa, int l) { return b_locked(aa, km, l); };

    for (int l = 0; l <= k; ++l) {
        Rational v = 0;
        if (l == 0 && a == 1) {
            Rational t1 = prev(1, 0) / 3 - prev(1, 1) / 8;
            for (int j = 2; j <= km; ++j) t1 -= Rational(j + 1) * prev(1, j) / Rational((j - 1) * (j + 3));
            Rational t2 = prev(0, 0) / 4;
            for (int j = 1; j <= km; ++j) t2 += Rational(j + 1) * prev(0, j) / Rational(j * (j + 2));
            Rational t3 = prev(2, 0) / 4;
            for (int j = 1; j <= km; ++j) t3 += Rational(j + 1) * prev(2, j) / Rational(j * (j + 2));
            v = q(21, 32) * t1 - q(3, 16) * t2 + q(21, 16) * t3;
            // Poles at n = 1/2 meet prefactors that vary with n; their
            // derivative terms survive the limit.
            Rational harmonic = 0;
            for (int j = 0; j <= km; ++j) harmonic += prev(1, j) / Rational(j + 1);
            v += q(5, 16) * prev(1, 1) + q(11, 32) * harmonic + q(13, 64) * prev(0, 0) + q(37, 64) * prev(2, 0);
        } else if (l == 0) {
            const long den = static_cast<long>(a - 1) * (a + 1);
            Rational harmonic = 0;
            for (int j = 0; j <= km; ++j) harmonic += prev(a, j) / Rational(j + 1);
            v = q(static_cast<long>(2 * a - 5) * (2 * a + 5), 32 * den) * prev(a, 1)
                - q(static_cast<long>(2 * a + 1) * (2 * a - 1), 8 * den) * harmonic
                + q(static_cast<long>(2 * a - 5) * (2 * a - 1), 16 * den) * prev(a - 1, 0)
                + q(static_cast<long>(2 * a + 1) * (2 * a + 5), 16 * den) * prev(a + 1, 0);
        } else if (a >= 2 && l == a - 1) {
            Rational t1 = prev(a, a) / Rational(4 * (a + 1));
            for (int j = 0; j <= km; ++j)
                if (j != a) t1 += Rational(j + 1) * prev(a, j) / Rational((j - a) * (j + a + 2));
            Rational t2 = prev(a, a - 2) / Rational(4 * (a - 1));
            for (int j = 0; j <= km; ++j)
                if (j != a - 2) t2 += Rational(j + 1) * prev(a, j) / Rational((j + a) * (j - a + 2));
            Rational t3 = prev(a - 1, a - 1) / Rational(4 * a);
            for (int j = 0; j <= km; ++j)
                if (j != a - 1) t3 += Rational(j + 1) * prev(a - 1, j) / Rational((j - a + 1) * (j + a + 1));
            Rational t4 = prev(a + 1, a - 1) / Rational(4 * a);
            for (int j = 0; j <= km; ++j)
                if (j != a - 1) t4 += Rational(j + 1) * prev(a + 1, j) / Rational((j - a + 1) * (j + a + 1));
            v = -q(3 * (4 * a + 3), 16 * (a + 1)) * t1 + q(3 * (4 * a - 3), 16 * (a - 1)) * t2
                - q(3 * (4 * a - 3), 16 * a) * t3 + q(3 * (4 * a + 3), 16 * a) * t4;
            // Each of the four sums has a simple pole at n = a - 1/2; half the
            // prefactor's derivative there multiplies the pole coefficient.
            // Derivatives are written as value times logarithmic derivative.
            const Rational g1 = q(3 * (4 * a + 3), 16 * (a + 1)) *
                                (q(1, 2 * a) + q(2, 3) + q(2, 4 * a + 3) - q(1, a + 1));
            const Rational g2 = -q(3 * (4 * a - 3), 16 * (a - 1)) *
                                (q(1, 2 * a) - q(2, 3) + q(2, 4 * a - 3) - q(1, a - 1));
            const Rational g3 = q(3 * (4 * a - 3), 16 * a) * (q(2, 3) + q(2, 4 * a - 3) - q(1, 2 * a));
            const Rational g4 = -q(3 * (4 * a + 3), 16 * a) * (-q(2, 3) + q(2, 4 * a + 3) - q(1, 2 * a));
            v += (g1 * prev(a, a) + g2 * prev(a, a - 2) + g3 * prev(a - 1, a - 1) + g4 * prev(a + 1, a - 1)) / 2;
        } else {
            const long common = 16L * (l - a + 1) * (l + a + 1);
            v = q(static_cast<long>(l + 1) * (2 * l - 2 * a + 5) * (2 * l + 2 * a + 5), common * (l + 2)) *
                    prev(a, l + 1)
                + q(static_cast<long>(l + 1) * (2 * l - 2 * a - 1) * (2 * l + 2 * a - 1), common * l) *
                      prev(a, l - 1)
                + q(static_cast<long>(2 * l - 2 * a + 5) * (2 * l + 2 * a - 1), common) * prev(a - 1, l)
                + q(static_cast<long>(2 * l - 2 * a - 1) * (2 * l + 2 * a + 5), common) * prev(a + 1, l);
        }
        row[static_cast<std::size_t>(l)] = std::move(v);
    }
    return row;
}

std::vector<Rational> pfd_coeffs(int a, int k) { return CoeffTable::shared().coeffs(a, k); }

std::vector<Rational> pfd_coeffs_by_solve(int a, int k) {
    a = std::abs(a);
    const int unknowns = k + 1;
    const int rows = k + 3;
    // Augmented system; each row is one n.
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(rows),
                                         std::vector<Rational>(static_cast<std::size_t>(unknowns) + 1));
    for (int r = 0; r < rows; ++r) {
        const int n = a + 1 + r;
        for (int l = 0; l < unknowns; ++l)
            m[r][l] = q(1, 2 * n - 2 * l - 1) - q(1, 2 * n + 2 * l + 3);
        const GaussRational rhs = moment_oracle(MomentKey(n - a, n + a, k, k));
        m[r][unknowns] = rhs.re;
    }
    int pivot_row = 0;
    for (int col = 0; col < unknowns; ++col) {
        int piv = pivot_row;
        while (piv < rows && sgn(m[piv][col]) == 0) ++piv;
        if (piv == rows) throw std::runtime_error("partial fraction system is singular");
        std::swap(m[piv], m[pivot_row]);
        for (int r = 0; r < rows; ++r) {
            if (r == pivot_row || sgn(m[r][col]) == 0) continue;
            const Rational f = m[r][col] / m[pivot_row][col];
            for (int c = col; c <= unknowns; ++c) m[r][c] -= f * m[pivot_row][c];
        }
        ++pivot_row;
    }
    for (int r = unknowns; r < rows; ++r)
        if (sgn(m[r][unknowns]) != 0) throw std::runtime_error("partial fraction system is inconsistent");
    std::vector<Rational> b(static_cast<std::size_t>(unknowns));
    for (int l = 0; l < unknowns; ++l) b[l] = m[l][unknowns] / m[l][l];
    return b;
}

Rational pfd_eval(const std::vector<Rational>& b, int n) {
    Rational acc = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const long l = static_cast<long>(i);
        acc += b[i] * (q(1, 2L * n - 2 * l - 1) - q(1, 2L * n + 2 * l + 3));
    }
    return acc;
}

Rational pfd_eval(int a, int k, int n) { return pfd_eval(pfd_coeffs(a, k), n); }

Rational B_from_table(int a, int k) {
    const auto b = pfd_coeffs(a, k);
    Rational acc = 0;
    for (std::size_t l = 0; l < b.size(); ++l) acc += Rational(static_cast<long>(l) + 1) * b[l];
    return acc;
}

Rational B_closed(int a, int k) {
    if (k < 0) throw DomainError("k must be nonnegative");
    a = std::abs(a);
    if (a == 0 && k == 0) return 1;
    const Integer main = binomial(2 * k, k + a);
    const Integer side = binomial(2 * k, k + a - 1) + binomial(2 * k, k + a + 1);
    Rational value = Rational(main) - Rational(side) / 2;
    Integer pow4;
    mpz_ui_pow_ui(pow4.get_mpz_t(), 4, static_cast<unsigned long>(k));
    return value / Rational(pow4);
}

Rational B_recursed(int a, int k) {
    if (k < 0) throw DomainError("k must be nonnegative");
    // Row k depends on |a| <= |a0| + (k0 - k); fill rows bottom-up.
    a = std::abs(a);
    std::vector<Rational> row(static_cast<std::size_t>(a + k) + 2);
    row[0] = 1;
    if (row.size() > 1) row[1] = q(-1, 2);
    for (int kk = 1; kk <= k; ++kk) {
        std::vector<Rational> next(row.size());
        for (std::size_t j = 0; j + 1 < row.size(); ++j) {
            const Rational& left = j == 0 ? row[1] : row[j - 1];
            next[j] = left / 4 + row[j] / 2 + row[j + 1] / 4;
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(a)];
}

Integer catalan(unsigned k) { return binomial(2 * k, k) / (k + 1); }

Rational semicircle_even_moment(unsigned k) {
    Integer pow4;
    mpz_ui_pow_ui(pow4.get_mpz_t(), 4, k);
    return Rational(catalan(k)) / Rational(2 * pow4);
}

Rational sn_even_moment_exact(int k, int N) {
    if (k < 0 || N < 1) throw DomainError("need k >= 0 and N >= 1");
    const auto b = pfd_coeffs(0, k);
    Rational sum = 0;
    for (int n = 1; n <= N - 1; ++n) sum += pfd_eval(b, n);
    // moments of (1+x) and (1+x)^2/2 against x^{2k}
    const Rational linear = q(2, 2 * k + 1);
    const Rational quadratic = q(1, 2 * k + 1) + q(1, 2 * k + 3);
    return Rational(N) * (linear - quadratic - sum / 2);
}

Rational sn_even_moment_tail(int k, int N) {
    if (k < 0 || N < 1) throw DomainError("need k >= 0 and N >= 1");
    const auto b = pfd_coeffs(0, k);
    Rational acc = 0;
    for (int l = 0; l <= k; ++l)
        for (int n = 1; n <= 2 * l + 2; ++n) acc += b[l] / Rational(2 * N + 2 * n - 2 * l - 3);
    return Rational(N) * acc / 2;
}

Rational sn_odd_moment_exact(int k, int N) {
    if (k < 0 || N < 1) throw DomainError("need k >= 0 and N >= 1");
    const Rational linear = q(2, 2 * k + 3);
    const Rational quadratic = q(2, 2 * k + 3);
    const auto& table = legendre::ExactTable::shared();
    Rational sum = 0;
    for (int n = 1; n <= N - 1; ++n) {
        // I_n^2 is even; only the cap-limited indices are integrated explicitly.
        if (n > table.max_degree() - 1) continue;
        const RationalPoly& In = table.I(n).re;
        sum += Rational(2 * n + 1) * (In * In * RationalPoly::monomial(2 * k + 1)).integral_sym();
    }
    return Rational(N) * (linear - quadratic - sum / 2);
}

Rational sn_moment_gap_constant(int k) {
    const auto b = pfd_coeffs(0, k);
    Rational acc = 0;
    for (int l = 0; l <= k; ++l) {
        long shifts = 0;
        for (int n = 1; n <= 2 * l + 2; ++n) shifts += std::labs(2L * n - 2 * l - 3);
        acc += abs(b[l]) * Rational(shifts);
    }
    return acc / 4;
}

bool idat0_check(int k) {
    const auto b = pfd_coeffs(0, k);
    Rational lhs = 0;
    for (int l = 0; l <= k; ++l) lhs += (q(1, 2 * l + 1) + q(1, 2 * l + 3)) * b[l];
    return lhs == q(2, 2 * k + 1) - q(2, 2 * k + 3);
}

}  // namespace kolmo::moments
