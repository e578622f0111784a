#include "cover/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace cover {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return IntMatrix();
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw std::invalid_argument("from_rows: ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<Int>>& cols) {
    if (cols.empty()) return IntMatrix();
    IntMatrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows_) throw std::invalid_argument("from_columns: ragged columns");
        for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

std::vector<Int> IntMatrix::row(std::size_t i) const {
    std::vector<Int> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

std::vector<Int> IntMatrix::column(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<Int> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
    return y;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Int IntMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant: matrix not square");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

bool IntMatrix::is_zero() const {
    for (const Int& v : data_)
        if (v != 0) return false;
    return true;
}

IntMatrix IntMatrix::hstack(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ && rhs.cols_ != 0 && cols_ != 0)
        throw std::invalid_argument("hstack: row mismatch");
    std::size_t r = std::max(rows_, rhs.rows_);
    IntMatrix out(r, cols_ + rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < rhs.rows_; ++i)
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, cols_ + j) = rhs(i, j);
    return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& rhs) const {
    if (cols_ != rhs.cols_ && rhs.rows_ != 0 && rows_ != 0)
        throw std::invalid_argument("vstack: column mismatch");
    std::size_t c = std::max(cols_, rhs.cols_);
    IntMatrix out(rows_ + rhs.rows_, c);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < rhs.rows_; ++i)
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(rows_ + i, j) = rhs(i, j);
    return out;
}

namespace {

// Elementary operations mirrored on the transform matrices so that
// U * M * V = D stays true after every step.
struct SnfWork {
    IntMatrix D, U, V;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < D.cols(); ++j) std::swap(D(a, j), D(b, j));
        for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < D.rows(); ++i) std::swap(D(i, a), D(i, b));
        for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
    }
    // row a += c * row b
    void add_row(std::size_t a, std::size_t b, const Int& c) {
        for (std::size_t j = 0; j < D.cols(); ++j) D(a, j) += c * D(b, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U(a, j) += c * U(b, j);
    }
    // col a += c * col b
    void add_col(std::size_t a, std::size_t b, const Int& c) {
        for (std::size_t i = 0; i < D.rows(); ++i) D(i, a) += c * D(i, b);
        for (std::size_t i = 0; i < V.rows(); ++i) V(i, a) += c * V(i, b);
    }
    void negate_row(std::size_t a) {
        for (std::size_t j = 0; j < D.cols(); ++j) D(a, j) = -D(a, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U(a, j) = -U(a, j);
    }
};

}  // namespace

SnfResult snf(const IntMatrix& M) {
    SnfWork w{M, IntMatrix::identity(M.rows()), IntMatrix::identity(M.cols())};
    const std::size_t m = M.rows(), n = M.cols();
    std::size_t t = 0;
    while (t < m && t < n) {
        // Pivot: smallest nonzero entry (absolute value) in the trailing
        // block, re-selected after every reduction sweep. The sweeps are
        // swap-free; remainders become the next pivot, which keeps the
        // coefficient growth in check.
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (w.D(i, j) == 0) continue;
                if (!found || abs(w.D(i, j)) < abs(w.D(pi, pj))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        bool dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
            if (w.D(i, t) == 0) continue;
            w.add_row(i, t, -floor_div(w.D(i, t), w.D(t, t)));
            if (w.D(i, t) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (w.D(t, j) == 0) continue;
            w.add_col(j, t, -floor_div(w.D(t, j), w.D(t, t)));
            if (w.D(t, j) != 0) dirty = true;
        }
        if (dirty) continue;  // strictly smaller remainders exist; re-pivot

        // Enforce divisibility of the trailing block by the pivot.
        bool divides_all = true;
        for (std::size_t i = t + 1; i < m && divides_all; ++i)
            for (std::size_t j = t + 1; j < n && divides_all; ++j)
                if (w.D(i, j) % w.D(t, t) != 0) {
                    w.add_row(t, i, 1);
                    divides_all = false;
                }
        if (!divides_all) continue;

        if (w.D(t, t) < 0) w.negate_row(t);
        ++t;
    }

    SnfResult res{std::move(w.U), std::move(w.D), std::move(w.V), t};
    return res;
}

IntMatrix kernel_lattice(const IntMatrix& M) {
    if (M.rows() == 0 || M.cols() == 0) return IntMatrix::identity(M.cols());
    SnfResult s = snf(M);
    // M * (col j of V) = U^{-1} * (col j of D); zero iff j >= rank.
    std::size_t nullity = M.cols() - s.rank;
    IntMatrix basis(M.cols(), nullity);
    for (std::size_t j = 0; j < nullity; ++j)
        for (std::size_t i = 0; i < M.cols(); ++i) basis(i, j) = s.V(i, s.rank + j);
    return basis;
}

std::optional<std::vector<Int>> solve_linear(const IntMatrix& A, const std::vector<Int>& b,
                                             const std::vector<Int>& moduli) {
    if (b.size() != A.rows() || moduli.size() != A.rows())
        throw std::invalid_argument("solve_linear: dimension mismatch");
    // Append one slack column (modulus * e_i) per modular row, then solve
    // the exact system M z = b via Smith reduction.
    std::vector<std::vector<Int>> slack;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        if (moduli[i] < 0) throw std::invalid_argument("solve_linear: negative modulus");
        if (moduli[i] != 0) {
            std::vector<Int> col(A.rows());
            col[i] = moduli[i];
            slack.push_back(std::move(col));
        }
    }
    IntMatrix M = A;
    if (!slack.empty()) M = A.hstack(IntMatrix::from_columns(slack));
    if (M.rows() == 0) return std::vector<Int>(A.cols());

    SnfResult s = snf(M);
    std::vector<Int> c = s.U.apply(b);
    std::vector<Int> w(M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Int d = (i < std::min(M.rows(), M.cols())) ? s.D(i, i) : Int(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            w[i] = c[i] / d;
        }
    }
    std::vector<Int> z = s.V.apply(w);
    z.resize(A.cols());
    return z;
}

}  // namespace cover
