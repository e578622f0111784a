#pragma once

#include "cover/decomp.hpp"
#include "cover/topology.hpp"

namespace cover {

/// Coefficient model of H^2(X, Z) (or a designated subgroup containing
/// every needed Chern class) together with the Chern-class map on A.
/// Classes of the form Theta_*(integral classes) live in the image of
/// the natural injection H2 ⊗ K -> H^2(X, K), so the tensor coordinates
/// represent them without loss.
struct CohomologyModel {
    FgAbGroup H2;
    Homomorphism c1;  // A -> H2
};

/// Element of H2 ⊗ coefficient-group in canonical coordinates.
struct ExtensionClass {
    TensorProduct model;  // carries H2 (left) and the coefficient group (right)
    GroupElement value;

    bool is_zero() const { return value.is_zero(); }
};

/// Theta: Z^q -> K, sending e_l to the class in K of column l of C.
/// Columns outside N are rejected.
Homomorphism theta_map(const BuildingData& bd, const KernelResult& kr, const Decomposition& dec);

/// xi = sum_l c1(M_l) ⊗ Theta(e_l) in H2 ⊗ K; by the main theorem this
/// represents the class of the central extension of fundamental groups.
ExtensionClass compute_xi(const BuildingData& bd, const KernelResult& kr, const Decomposition& dec,
                          const CohomologyModel& coh);

/// i(c(f)) = sum_j c1(D_j) ⊗ gtilde_j in H2 ⊗ Gtilde.
ExtensionClass compute_icf(const BuildingData& bd, const PicardModel& pic,
                           const DeckGroupResult& dg, const CohomologyModel& coh);

/// (id ⊗ inc_K)(xi) == icf.
bool check_xi_icf_consistency(const ExtensionClass& xi, const ExtensionClass& icf,
                              const Homomorphism& inc_K);

struct DivisibilityReport {
    std::vector<bool> divisible;  // per branch: c1(D_j) is m_j-divisible in H2
    bool all_divisible = false;
    bool icf_vanishes = false;  // checked when all hypotheses hold
};

/// If every c1(D_j) is m_j-divisible in H2 then i(c(f)) must vanish;
/// reports which branch hypotheses hold and asserts the vanishing.
DivisibilityReport check_divisibility_vanishing(const BuildingData& bd, const PicardModel& pic,
                                                const DeckGroupResult& dg,
                                                const CohomologyModel& coh);

struct CorollaryReport {
    bool hom_surjective = false;          // Hom(Gamma, Gtilde) -> Hom(Gamma, G) onto
    bool splits = false;                  // 0 -> K -> Gtilde -> G -> 0 splits
    bool hom_trivial = false;             // Hom(Gamma, G) = 0
    bool i_injective_guaranteed = false;  // any of the above
};

/// Uniqueness conditions for recovering c(f) from i(c(f)) when pi_1(X)
/// is modeled by a finite abelian group Gamma.
CorollaryReport corollary_conditions(const FgAbGroup& Gamma, const BuildingData& bd,
                                     const DeckGroupResult& dg);

struct CyclicExtension {
    FgAbGroup E;
    Homomorphism inc;   // K -> E
    Homomorphism proj;  // E -> Z/n
    bool splits = false;
};

/// Middle group of the central extension of Z/n by K with class kappa in
/// K/nK: E = (Z ⊕ K) / <(n, -kappa_lift)> in canonical form, with the
/// inclusion of K and the projection onto Z/n. The exact sequence is
/// machine-verified.
CyclicExtension realize_cyclic_extension(const Int& n, const FgAbGroup& K,
                                         const GroupElement& kappa_lift);

/// K / nK with the projection from K.
QuotientResult mod_n_quotient(const FgAbGroup& K, const Int& n);

}  // namespace cover
