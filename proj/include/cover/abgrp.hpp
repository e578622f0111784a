#pragma once

#include "cover/integers.hpp"
#include "cover/matrix.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cover {

/// Finitely generated abelian group in canonical form: torsion invariant
/// factors d_1 | d_2 | ... | d_t (each >= 2, ascending divisibility)
/// followed by a free rank. Canonical generator u is the torsion
/// generator of order invariants[u] for u < t, and a free generator for
/// t <= u < t + free_rank.
struct FgAbGroup {
    std::vector<Int> invariants;
    std::size_t free_rank = 0;

    std::size_t torsion_rank() const { return invariants.size(); }
    std::size_t dim() const { return invariants.size() + free_rank; }
    bool is_finite() const { return free_rank == 0; }
    bool is_trivial() const { return dim() == 0; }

    /// Group order; only valid for finite groups.
    Int order() const;

    /// Modulus of canonical coordinate u: d_u for torsion, 0 for free.
    Int modulus(std::size_t u) const;
    std::vector<Int> moduli() const;

    bool operator==(const FgAbGroup& rhs) const = default;
};

/// Validates the invariant-factor chain and constructs the group.
FgAbGroup make_group(std::vector<Int> invariants, std::size_t free_rank);

/// Element of a specific FgAbGroup in canonical coordinates; torsion
/// coordinates are kept in [0, d_u).
struct GroupElement {
    FgAbGroup group;
    std::vector<Int> coords;

    GroupElement() = default;
    GroupElement(FgAbGroup g, std::vector<Int> c);

    bool is_zero() const;
    /// Order of the element; 0 encodes infinite order.
    Int order() const;

    GroupElement operator+(const GroupElement& rhs) const;
    GroupElement operator-() const;
    GroupElement operator*(const Int& n) const;
    bool operator==(const GroupElement& rhs) const = default;
};

GroupElement zero_element(const FgAbGroup& g);
GroupElement canonical_generator(const FgAbGroup& g, std::size_t u);

/// Reduce a raw coordinate vector into canonical range for the group.
std::vector<Int> reduce_coords(const FgAbGroup& g, std::vector<Int> coords);

/// Homomorphism between groups in canonical coordinates; column u of the
/// matrix is the image of the source's canonical generator u. The
/// constructor certifies well-definedness: d * (column of a torsion
/// generator of order d) must vanish in the target.
struct Homomorphism {
    FgAbGroup source;
    FgAbGroup target;
    IntMatrix matrix;

    Homomorphism() = default;
    Homomorphism(FgAbGroup src, FgAbGroup tgt, IntMatrix m);

    GroupElement apply(const GroupElement& x) const;
    std::vector<Int> apply_coords(const std::vector<Int>& coords) const;
    Homomorphism compose_after(const Homomorphism& inner) const;  // this ∘ inner
    bool is_zero_map() const;
};

/// Whether the matrix defines a homomorphism between the given groups.
bool is_well_defined(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& m);

Homomorphism identity_hom(const FgAbGroup& g);
Homomorphism zero_hom(const FgAbGroup& source, const FgAbGroup& target);
/// Multiplication by n as an endomorphism.
Homomorphism scaling_hom(const FgAbGroup& g, const Int& n);

// ---------------------------------------------------------------------
// Presentations and quotients
// ---------------------------------------------------------------------

struct CanonicalizeResult {
    FgAbGroup group;
    /// Map from original generator coordinates (Z^n, free) to canonical
    /// coordinates of `group`.
    Homomorphism to_canonical;
};

/// Cokernel of the row space of `relations` inside Z^num_generators,
/// in canonical form.
CanonicalizeResult canonicalize(const IntMatrix& relations, std::size_t num_generators);

/// Generators of ker f, as elements of the source. Empty means trivial.
std::vector<GroupElement> hom_kernel(const Homomorphism& f);

struct QuotientResult {
    FgAbGroup group;
    Homomorphism projection;  // ambient -> quotient
};

/// G / <gens> in canonical form with the projection map.
QuotientResult subgroup_quotient(const FgAbGroup& G, const std::vector<GroupElement>& gens);

/// Spec-facing alias of solve_linear: row i of A is a congruence modulo
/// moduli[i] (0 = exact equality). nullopt is a certified Unsolvable.
std::optional<std::vector<Int>> solve_mixed_congruences(const IntMatrix& A,
                                                        const std::vector<Int>& b,
                                                        const std::vector<Int>& moduli);

// ---------------------------------------------------------------------
// Subgroups described by generators inside a "modular ambient" Z^n with
// per-coordinate moduli (0 = free coordinate). This covers canonical
// groups as well as plain direct sums such as ⊕ Z/m_j.
// ---------------------------------------------------------------------

struct SubgroupInfo {
    FgAbGroup group;          // abstract structure of the subgroup
    IntMatrix gens;           // ambient_dim x s, generator tuple
    Homomorphism to_canonical;  // Z^s -> group
};

/// Relation lattice of a generator tuple: rows span {c : sum c_l * gens_l = 0}.
IntMatrix tuple_relations(const std::vector<Int>& ambient_moduli, const IntMatrix& gens);

SubgroupInfo subgroup_from_generators(const std::vector<Int>& ambient_moduli,
                                      const IntMatrix& gens);

/// Coordinates of an ambient element in the subgroup's canonical
/// generators; nullopt when the element is not in the subgroup.
std::optional<std::vector<Int>> subgroup_coords(const SubgroupInfo& sub,
                                                const std::vector<Int>& ambient_moduli,
                                                const std::vector<Int>& element);

/// A coordinate vector x with hom.matrix * x = target in hom.target;
/// nullopt when target is outside the image.
std::optional<std::vector<Int>> hom_preimage(const Homomorphism& hom,
                                             const std::vector<Int>& target_coords);

/// Right inverse on canonical generators (requires surjectivity).
IntMatrix surjection_section(const Homomorphism& hom);

bool is_injective(const Homomorphism& hom);
bool is_surjective(const Homomorphism& hom);

// ---------------------------------------------------------------------
// Tensor products
// ---------------------------------------------------------------------

/// G ⊗ K in canonical form together with the bilinear evaluation map.
/// Pure-tensor coordinates are taken over pairs (alpha, beta) where
/// alpha runs over the free generators of G first and then its torsion
/// generators, and beta runs over the canonical generators of K; the
/// canonical form is the cokernel of the diagonal order relations in
/// that pair basis.
struct TensorProduct {
    FgAbGroup group;
    FgAbGroup left, right;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (gen of left, gen of right)
    Homomorphism pair_to_canonical;  // Z^{#pairs} -> group

    GroupElement eval(const GroupElement& a, const GroupElement& b) const;
};

TensorProduct tensor_with(const FgAbGroup& G, const FgAbGroup& K);

/// Map G ⊗ K -> G ⊗ K' induced by f : K -> K' (left factor fixed).
Homomorphism tensor_induced_right(const TensorProduct& src, const TensorProduct& dst,
                                  const Homomorphism& f);

// ---------------------------------------------------------------------
// Splitting of short exact sequences of finite abelian groups
// ---------------------------------------------------------------------

struct SplitResult {
    bool splits = false;
    std::optional<Homomorphism> section;  // proj.target -> proj.source when it splits
};

/// Decides whether 0 -> K -> E -> G -> 0 (given by inc and proj) splits,
/// via the Ext class of the sequence over a free presentation of G.
/// Exactness preconditions are verified and violations rejected.
SplitResult sequence_splits(const Homomorphism& inc, const Homomorphism& proj);

}  // namespace cover
