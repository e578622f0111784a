#pragma once

#include "cover/integers.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace cover {

/// Dense matrix over Z with exact entries, row-major storage.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static IntMatrix from_columns(const std::vector<std::vector<Int>>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Int> row(std::size_t i) const;
    std::vector<Int> column(std::size_t j) const;

    IntMatrix operator*(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    /// M * x for a column vector x.
    std::vector<Int> apply(const std::vector<Int>& x) const;

    IntMatrix transposed() const;

    /// Exact determinant via fraction-free (Bareiss) elimination; square only.
    Int determinant() const;

    bool is_zero() const;

    /// [this | rhs], row counts must match.
    IntMatrix hstack(const IntMatrix& rhs) const;
    /// [this ; rhs], column counts must match.
    IntMatrix vstack(const IntMatrix& rhs) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

/// Smith normal form: U * M * V = D with U, V unimodular and D diagonal
/// with d_1 | d_2 | ..., nonzero entries positive.
struct SnfResult {
    IntMatrix U;  // rows x rows
    IntMatrix D;  // rows x cols
    IntMatrix V;  // cols x cols
    std::size_t rank = 0;  // number of nonzero diagonal entries
};

SnfResult snf(const IntMatrix& M);

/// Basis of the integer kernel {x : M x = 0}, returned as the columns of
/// a cols(M) x nullity matrix.
IntMatrix kernel_lattice(const IntMatrix& M);

/// Solve A x = b subject to per-row moduli: row i is interpreted as
/// (A x)_i == b_i (mod moduli[i]), with moduli[i] == 0 meaning exact
/// equality over Z. Returns a witness or nullopt when no solution
/// exists; the negative answer is exact, not heuristic.
std::optional<std::vector<Int>> solve_linear(const IntMatrix& A, const std::vector<Int>& b,
                                             const std::vector<Int>& moduli);

}  // namespace cover
