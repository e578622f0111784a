#pragma once

#include "cover/building_data.hpp"
#include "cover/topology.hpp"

#include <random>
#include <stdexcept>

namespace cover {

/// The congruence construction could not complete; only possible on
/// corrupted input since the underlying lemma guarantees success on
/// valid data.
struct DecompositionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A decomposition A = ⊕ <M_l> together with an integer matrix C such
/// that each branch class satisfies D_j = sum_l c_jl M_l and every
/// column of C, read in ⊕ Z/m_j, lies in N. Torsion generators of
/// prime-power order come first (sorted by prime, then order), free
/// generators follow.
struct Decomposition {
    std::vector<GroupElement> M;
    std::vector<Int> orders;  // order of M_l; 0 for free generators
    IntMatrix C;              // k x q
};

/// Per-column dual test of the matrix C: column l passes when
/// sum_j a_ij c_jl / m_j is an integer for every character generator.
ValidationReport verify_columns_in_N(const BuildingData& bd, const IntMatrix& C);

/// Constructive decomposition: splits A into prime-power cyclic pieces,
/// reads off the forced free coefficients, then repairs each torsion
/// column by the congruence-lifting solver so that it lands in N.
/// Requires valid building data with prime-power character orders and
/// passing characteristic relations.
Decomposition decompose_divisors(const BuildingData& bd, const PicardModel& pic);

/// Same construction preceded by a random automorphism of A and followed
/// by random column shifts inside N; used to exercise the independence
/// of the extension class from the chosen decomposition.
Decomposition decompose_divisors_randomized(const BuildingData& bd, const PicardModel& pic,
                                            std::mt19937_64& rng);

/// Rebuild sum_l C(j,l) * M_l and compare with D_j for every j.
bool decomposition_reconstructs(const Decomposition& dec, const PicardModel& pic);

/// Verifies A = ⊕ <M_l>: exact orders, spanning, and relation lattice
/// equal to the diagonal one.
ValidationReport verify_direct_sum(const Decomposition& dec, const FgAbGroup& A);

/// Random automorphism of a finitely generated abelian group (rejection
/// sampling over well-defined endomorphisms).
Homomorphism random_automorphism(const FgAbGroup& G, std::mt19937_64& rng);

}  // namespace cover
