#include "cover/congruence.hpp"

namespace cover {

IntMatrix lemma_coefficients(const LemmaSystem& sys) {
    const std::size_t t = sys.a.rows(), m = sys.a.cols();
    IntMatrix c(t, m);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Int num = sys.d[i] * sys.a(i, j);
            if (num % sys.h[j] != 0)
                throw InvalidHypotheses("coefficient d_i * a_ij / h_j is not an integer (d_i does not kill chi_i)");
            c(i, j) = num / sys.h[j];
        }
    return c;
}

namespace {

std::size_t rank_mod_p(IntMatrix c, const Int& p) {
    const std::size_t t = c.rows(), m = c.cols();
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < m; ++j) c(i, j) = pos_mod(c(i, j), p);
    std::size_t rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < t; ++col) {
        std::size_t pivot = row;
        while (pivot < t && c(pivot, col) == 0) ++pivot;
        if (pivot == t) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m; ++j) std::swap(c(row, j), c(pivot, j));
        Int inv = mod_inverse(c(row, col), p);
        for (std::size_t i = 0; i < t; ++i) {
            if (i == row || c(i, col) == 0) continue;
            Int f = pos_mod(c(i, col) * inv, p);
            for (std::size_t j = 0; j < m; ++j) c(i, j) = pos_mod(c(i, j) - f * c(row, j), p);
        }
        ++row;
        ++rank;
    }
    return rank;
}

/// Solve C s ≡ rhs (mod p) by Gaussian elimination over the prime field;
/// pivot ties broken by lowest row index, free variables set to zero.
std::vector<Int> solve_mod_p(const IntMatrix& C, const std::vector<Int>& rhs, const Int& p) {
    const std::size_t t = C.rows(), m = C.cols();
    IntMatrix aug(t, m + 1);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug(i, j) = pos_mod(C(i, j), p);
        aug(i, m) = pos_mod(rhs[i], p);
    }
    std::vector<std::size_t> pivot_col(t, m);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < t; ++col) {
        std::size_t pivot = row;
        while (pivot < t && aug(pivot, col) == 0) ++pivot;
        if (pivot == t) continue;
        if (pivot != row)
            for (std::size_t j = 0; j <= m; ++j) std::swap(aug(row, j), aug(pivot, j));
        Int inv = mod_inverse(aug(row, col), p);
        for (std::size_t j = 0; j <= m; ++j) aug(row, j) = pos_mod(aug(row, j) * inv, p);
        for (std::size_t i = 0; i < t; ++i) {
            if (i == row || aug(i, col) == 0) continue;
            Int f = aug(i, col);
            for (std::size_t j = 0; j <= m; ++j)
                aug(i, j) = pos_mod(aug(i, j) - f * aug(row, j), p);
        }
        pivot_col[row] = col;
        ++row;
    }
    for (std::size_t i = row; i < t; ++i)
        if (aug(i, m) != 0)
            throw InvalidHypotheses("rank-mod-p base case unexpectedly inconsistent");
    std::vector<Int> s(m);
    for (std::size_t i = 0; i < row; ++i) s[pivot_col[i]] = aug(i, m);
    return s;
}

}  // namespace

void validate_lemma_system(const LemmaSystem& sys) {
    const std::size_t t = sys.a.rows(), m = sys.a.cols();
    if (sys.h.size() != m || sys.d.size() != t || sys.x.size() != t)
        throw InvalidHypotheses("system dimensions are inconsistent");
    if (sys.gamma < 1) throw InvalidHypotheses("gamma must be >= 1");
    if (!is_prime(sys.p)) throw InvalidHypotheses("p is not prime");
    for (const Int& hj : sys.h)
        if (hj < 1) throw InvalidHypotheses("generator order h_j < 1");
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (sys.a(i, j) < 0 || sys.a(i, j) >= sys.h[j])
                throw InvalidHypotheses("component a_ij out of range [0, h_j)");
    for (const Int& di : sys.d) {
        if (di < 2) throw InvalidHypotheses("character order d_i < 2");
        Int r = di;
        while (r % sys.p == 0) r /= sys.p;
        if (r != 1) throw InvalidHypotheses("character order d_i is not a power of p");
    }
    IntMatrix c = lemma_coefficients(sys);
    if (rank_mod_p(c, sys.p) != t)
        throw InvalidHypotheses("coefficient matrix mod p does not have full rank t "
                                "(characters do not span a direct sum of the declared orders)");
}

std::vector<Int> solve_lifting(const LemmaSystem& sys) {
    validate_lemma_system(sys);
    IntMatrix c = lemma_coefficients(sys);
    const std::size_t t = sys.a.rows(), m = sys.a.cols();

    std::vector<Int> s = solve_mod_p(c, sys.x, sys.p);
    Int pe = sys.p;  // current modulus p^e
    for (unsigned level = 1; level < sys.gamma; ++level) {
        // C s = x + p^e y; correct by s += p^e * delta with C delta ≡ -y (mod p).
        std::vector<Int> cs = c.apply(s);
        std::vector<Int> y(t);
        for (std::size_t i = 0; i < t; ++i) {
            Int diff = cs[i] - sys.x[i];
            if (diff % pe != 0) throw std::logic_error("solve_lifting: lost invariant at level");
            y[i] = -(diff / pe);
        }
        std::vector<Int> delta = solve_mod_p(c, y, sys.p);
        for (std::size_t j = 0; j < m; ++j) s[j] += pe * delta[j];
        pe *= sys.p;
    }

    std::vector<Int> cs = c.apply(s);
    for (std::size_t i = 0; i < t; ++i)
        if ((cs[i] - sys.x[i]) % pe != 0)
            throw std::logic_error("solve_lifting: final verification failed");
    for (std::size_t j = 0; j < m; ++j) s[j] = pos_mod(s[j], pe);
    return s;
}

std::vector<Int> crt_combine(const std::vector<std::pair<std::vector<Int>, Int>>& per_modulus) {
    if (per_modulus.empty()) throw std::invalid_argument("crt_combine: empty input");
    const std::size_t m = per_modulus.front().first.size();
    for (const auto& [vec, mod] : per_modulus) {
        if (vec.size() != m) throw std::invalid_argument("crt_combine: mixed vector lengths");
        if (mod < 1) throw std::invalid_argument("crt_combine: modulus < 1");
    }
    for (std::size_t i = 0; i < per_modulus.size(); ++i)
        for (std::size_t j = i + 1; j < per_modulus.size(); ++j)
            if (gcd(per_modulus[i].second, per_modulus[j].second) != 1)
                throw std::invalid_argument("crt_combine: moduli are not pairwise coprime");

    std::vector<Int> acc = per_modulus.front().first;
    Int acc_mod = per_modulus.front().second;
    for (Int& v : acc) v = pos_mod(v, acc_mod);
    for (std::size_t idx = 1; idx < per_modulus.size(); ++idx) {
        const auto& [vec, mod] = per_modulus[idx];
        Int inv = mod_inverse(acc_mod, mod);
        for (std::size_t j = 0; j < m; ++j) {
            Int target = pos_mod(vec[j], mod);
            Int k = pos_mod((target - acc[j]) * inv, mod);
            acc[j] += acc_mod * k;
        }
        acc_mod *= mod;
    }
    return acc;
}

}  // namespace cover
