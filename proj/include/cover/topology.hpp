#pragma once

#include "cover/building_data.hpp"

#include <stdexcept>

namespace cover {

/// A supplied generator of the rho image is not contained in N; the
/// scenario data is inconsistent with a totally ramified cover.
struct RhoNotInN : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Generators of the image of sigma ∘ rho inside ⊕ Z/m_j, written as
/// integer vectors in the basis of the pulled-back branch classes. This
/// is geometric input: it cannot be derived from the building data.
struct RhoImage {
    std::vector<std::vector<Int>> gens;

    /// Declares that every pulled-back branch class is delta_j times one
    /// common primitive class; the image is then generated by the single
    /// vector (delta_1, ..., delta_k).
    static RhoImage from_divisibility(const std::vector<Int>& delta);
};

/// N = ker(⊕ G_j -> G) with its generators in ⊕ Z/m_j coordinates.
struct InertiaKernel {
    std::vector<std::vector<Int>> gens;  // reduced, nonzero
    FgAbGroup group;                     // abstract structure of N
    IntMatrix gens_matrix;               // k x s
    Homomorphism to_canonical;           // Z^s -> group
};

/// Kernel data of pi_1(Y) -> pi_1(X): K = N / Im(sigma ∘ rho).
struct KernelResult {
    InertiaKernel N;
    FgAbGroup K;
    Homomorphism proj_N_to_K;
    std::vector<std::vector<Int>> rho_in_N;  // rho generators reduced into ⊕ Z/m_j
};

/// Deck group of the lifted cover: G_tilde = (⊕ G_j) / Im(sigma ∘ rho),
/// an extension of G by K with distinguished branch generators.
struct DeckGroupResult {
    FgAbGroup Gtilde;
    Homomorphism inc_K;    // K -> Gtilde
    Homomorphism proj_G;   // Gtilde -> G
    std::vector<GroupElement> gtilde;  // images of the standard generators
    Homomorphism phi;      // Z^k -> Gtilde, e_j -> gtilde_j
};

InertiaKernel compute_N(const BuildingData& bd);

/// Canonical coordinates of an element of ⊕ Z/m_j inside N; nullopt when
/// the element is not in N.
std::optional<std::vector<Int>> coords_in_N(const BuildingData& bd, const InertiaKernel& N,
                                            const std::vector<Int>& element);

KernelResult compute_K(const BuildingData& bd, const RhoImage& rho);

DeckGroupResult compute_G_tilde(const BuildingData& bd, const RhoImage& rho);

}  // namespace cover
