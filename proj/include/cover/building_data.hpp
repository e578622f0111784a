#pragma once

#include "cover/abgrp.hpp"

#include <string>
#include <vector>

namespace cover {

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
    void fail(std::string msg) { problems.push_back(std::move(msg)); }
};

/// Character of a finite abelian group G, represented additively as a
/// homomorphism G -> Q/Z: the value on canonical generator u is
/// num[u] / d_u with num[u] in [0, d_u). Exact arithmetic throughout; no
/// roots of unity and no floating point.
struct Character {
    FgAbGroup group;
    std::vector<Int> num;

    Character() = default;
    Character(FgAbGroup g, std::vector<Int> numerators);

    /// Value chi(x) as a reduced fraction (num, den) with 0 <= num < den.
    std::pair<Int, Int> eval(const GroupElement& x) const;
    Int order() const;
    bool is_trivial() const;

    Character operator+(const Character& rhs) const;
    Character operator*(const Int& n) const;
    bool operator==(const Character& rhs) const = default;
};

Character trivial_character(const FgAbGroup& g);
/// Dual of canonical generator u: value 1/d_u on generator u, 0 elsewhere.
Character dual_generator(const FgAbGroup& g, std::size_t u);

/// Building data of a totally ramified abelian cover: the Galois group,
/// the branch count k, per-branch inertia orders m_j with distinguished
/// generators g_j, and a chosen generating set chi of the character
/// group with G* = ⊕<chi_i>.
struct BuildingData {
    FgAbGroup G;
    std::vector<Int> m;            // inertia orders m_j
    std::vector<GroupElement> g;   // inertia generators g_j
    std::vector<Character> chi;    // character generators chi_i
    std::vector<Int> chi_order;    // declared orders d_i

    std::size_t branch_count() const { return m.size(); }
};

/// Model of the subgroup A of the divisor class group generated by the
/// branch classes D_j and the eigensheaf classes L_{chi_i}.
struct PicardModel {
    FgAbGroup A;
    std::vector<GroupElement> D;     // k branch divisor classes
    std::vector<GroupElement> Lgen;  // one class per chi generator
};

/// Checks every structural invariant of the building data: inertia
/// orders match element orders, the g_j generate G (total ramification),
/// declared character orders are exact, and G* is the direct sum of the
/// cyclic groups generated by the chi_i.
ValidationReport validate_building_data(const BuildingData& bd);

ValidationReport validate_picard_model(const BuildingData& bd, const PicardModel& pic);

/// Unique branch components (a_{chi,1}, ..., a_{chi,k}) of a character:
/// chi restricted to the inertia subgroup of branch j is a_{chi,j} times
/// the distinguished character psi_j, with 0 <= a_{chi,j} < m_j.
std::vector<Int> character_components(const BuildingData& bd, const Character& chi);

/// Reconstructs the character with the given branch components, solving
/// the defining congruences on the canonical generators of G. nullopt
/// when no character of G has these components.
std::optional<Character> character_from_components(const BuildingData& bd,
                                                   const std::vector<Int>& components);

/// Coordinates (b_1, ..., b_n) of chi over the chosen generator basis:
/// chi = sum b_i chi_i with 0 <= b_i < d_i.
std::vector<Int> character_basis_coords(const BuildingData& bd, const Character& chi);

/// Verifies the characteristic relations
///   d_i * L_{chi_i} = sum_j (d_i a_ij / m_j) D_j   in A,
/// reporting non-integral coefficients and failed identities.
ValidationReport check_characteristic_relations(const BuildingData& bd, const PicardModel& pic);

/// Class of the eigensheaf attached to an arbitrary character:
///   L_chi = sum_i b_i L_{chi_i} - sum_j q_j D_j,
/// where q_j = floor(sum_i b_i a_ij / m_j).
GroupElement derive_eigensheaf_class(const BuildingData& bd, const PicardModel& pic,
                                     const Character& chi);

/// Whether every chosen character generator has prime-power order.
bool has_prime_power_characters(const BuildingData& bd);

/// Splits each chi_i into its prime-power parts (CRT on the cyclic
/// factor it generates), producing equivalent building data whose
/// character generators all have prime-power order. The paired Picard
/// model receives the derived eigensheaf class of each new generator.
std::pair<BuildingData, PicardModel> refine_prime_power(const BuildingData& bd,
                                                        const PicardModel& pic);

}  // namespace cover
