#pragma once

#include "cover/integers.hpp"
#include "cover/matrix.hpp"

#include <stdexcept>
#include <vector>

namespace cover {

/// The hypotheses of the congruence-lifting lemma do not hold for the
/// given data; no solution is attempted. Distinct from an Unsolvable
/// answer of the generic solver: under valid hypotheses the system is
/// always solvable.
struct InvalidHypotheses : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// System data for the lifting solver. The ambient group is
/// H = ⊕_j Z/h_j with generators ζ_j; character i is χ_i = Σ_j a_ij ζ_j
/// with declared order d_i (a power of p), and the target congruences are
///   Σ_j (d_i a_ij / h_j) s_j ≡ x_i  (mod p^gamma),  i = 1..t.
struct LemmaSystem {
    std::vector<Int> h;   // orders h_j >= 1 of the ambient generators
    IntMatrix a;          // t x m component matrix, 0 <= a_ij < h_j
    std::vector<Int> d;   // declared orders d_i = p^{alpha_i}
    Int p;                // prime
    unsigned gamma = 1;   // exponent, >= 1
    std::vector<Int> x;   // right-hand side
};

/// Integer coefficient matrix c_ij = d_i a_ij / h_j of a validated system.
IntMatrix lemma_coefficients(const LemmaSystem& sys);

/// Validates the hypotheses (p prime, d_i = p-powers killing chi_i, and
/// the coefficient matrix of full rank t over Z/p). Throws
/// InvalidHypotheses on failure.
void validate_lemma_system(const LemmaSystem& sys);

/// Solves the system by the inductive algorithm: a rank-t solve over Z/p
/// followed by one lifting step per exponent level. The returned vector
/// satisfies every congruence modulo p^gamma.
std::vector<Int> solve_lifting(const LemmaSystem& sys);

/// Chinese-remainder recombination of per-modulus solution vectors;
/// moduli must be pairwise coprime, vectors of equal length.
std::vector<Int> crt_combine(const std::vector<std::pair<std::vector<Int>, Int>>& per_modulus);

}  // namespace cover
