#pragma once

// Brute-force oracles and random generators for the test suites. The
// oracles work on small int64 data, independent of the library's exact
// linear algebra: enumeration and order counting only.

#include "cover/abgrp.hpp"
#include "cover/building_data.hpp"
#include "cover/congruence.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace testsupport {

using Vec = std::vector<std::int64_t>;

/// All elements of ⊕ Z/moduli[u] (every modulus >= 1).
std::vector<Vec> enumerate_ambient(const std::vector<std::int64_t>& moduli);

Vec add_mod(const Vec& a, const Vec& b, const std::vector<std::int64_t>& moduli);
Vec scale_mod(const Vec& a, std::int64_t k, const std::vector<std::int64_t>& moduli);

/// Closure of the generators under addition.
std::set<Vec> subgroup_closure(const std::vector<Vec>& gens,
                               const std::vector<std::int64_t>& moduli);

/// Invariant factors (ascending) of the quotient (⊕ Z/moduli) / S,
/// recovered by counting d-torsion of the quotient for prime powers d.
std::vector<std::int64_t> quotient_invariants(const std::vector<std::int64_t>& moduli,
                                              const std::set<Vec>& S);

/// Invariant factors of the subgroup S itself.
std::vector<std::int64_t> subgroup_invariants(const std::vector<std::int64_t>& moduli,
                                              const std::set<Vec>& S);

/// Convenience: invariant factors of (⊕ Z/moduli) / <gens>.
std::vector<std::int64_t> brute_quotient_invariants(const std::vector<std::int64_t>& moduli,
                                                    const std::vector<Vec>& gens);

std::vector<std::int64_t> to_int64(const std::vector<cover::Int>& v);
std::vector<cover::Int> to_int(const Vec& v);

/// gcd of all i x i minors of a matrix (exact, for the SNF cross-check).
cover::Int minor_gcd(const cover::IntMatrix& m, std::size_t size);

// ------------------------------------------------------------------
// Random generators (deterministic under a fixed seed).
// ------------------------------------------------------------------

/// Random finite abelian group of order <= max_order.
cover::FgAbGroup random_finite_group(std::mt19937_64& rng, std::int64_t max_order);

cover::GroupElement random_element(std::mt19937_64& rng, const cover::FgAbGroup& g);

/// Random totally ramified building data: |G| <= max_order, at most
/// max_branches branches, characters = duals of the canonical
/// generators. Retries internally until the branch elements span G.
cover::BuildingData random_building_data(std::mt19937_64& rng, std::int64_t max_order,
                                         std::size_t max_branches);

/// Random valid lifting system with p^gamma <= max_p_gamma and at most
/// max_m ambient generators. Character orders are exact and the direct
/// sum hypothesis holds by construction.
cover::LemmaSystem random_lemma_system(std::mt19937_64& rng, std::int64_t max_p_gamma,
                                       std::size_t max_m);

/// Random picard model paired with bd (prime-power characters) whose
/// characteristic relations hold; A has torsion order <= max_torsion and
/// free rank <= max_free.
struct RandomModel {
    cover::BuildingData bd;
    cover::PicardModel pic;
};
RandomModel random_picard_model(std::mt19937_64& rng, std::int64_t max_group_order,
                                std::size_t max_branches, std::int64_t max_torsion,
                                std::size_t max_free);

}  // namespace testsupport
