#include "cover/topology.hpp"

namespace cover {

RhoImage RhoImage::from_divisibility(const std::vector<Int>& delta) {
    return RhoImage{{delta}};
}

namespace {

std::vector<Int> reduce_mod_m(const BuildingData& bd, std::vector<Int> v) {
    if (v.size() != bd.branch_count())
        throw std::invalid_argument("rho generator has wrong length");
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = pos_mod(v[j], bd.m[j]);
    return v;
}

GroupElement apply_sigma(const BuildingData& bd, const std::vector<Int>& v) {
    GroupElement out = zero_element(bd.G);
    for (std::size_t j = 0; j < v.size(); ++j) out = out + bd.g[j] * v[j];
    return out;
}

/// Dual membership test: (t_j) lies in N iff sum_j a_ij t_j / m_j is an
/// integer for every chosen character generator.
bool passes_dual_test(const BuildingData& bd, const std::vector<Int>& t) {
    Int L = 1;
    for (const Int& mj : bd.m) L = lcm(L, mj);
    for (const Character& chi : bd.chi) {
        std::vector<Int> comps = character_components(bd, chi);
        Int acc = 0;
        for (std::size_t j = 0; j < bd.branch_count(); ++j) acc += comps[j] * t[j] * (L / bd.m[j]);
        if (acc % L != 0) return false;
    }
    return true;
}

}  // namespace

InertiaKernel compute_N(const BuildingData& bd) {
    const std::size_t k = bd.branch_count();
    // Kernel lattice of (t_j) -> sum t_j g_j as a map Z^k -> G, then the
    // nonzero reductions mod (m_1, ..., m_k) generate N.
    std::vector<std::vector<Int>> cols;
    for (std::size_t j = 0; j < k; ++j) cols.push_back(bd.g[j].coords);
    IntMatrix Mg = cols.empty() ? IntMatrix(bd.G.dim(), 0) : IntMatrix::from_columns(cols);

    Homomorphism sigma_bar(make_group({}, k), bd.G, Mg);
    std::vector<GroupElement> raw = hom_kernel(sigma_bar);

    std::vector<std::vector<Int>> gens;
    for (const GroupElement& e : raw) {
        std::vector<Int> t = reduce_mod_m(bd, e.coords);
        bool zero = std::all_of(t.begin(), t.end(), [](const Int& v) { return v == 0; });
        if (!zero) gens.push_back(std::move(t));
    }
    IntMatrix gm = gens.empty() ? IntMatrix(k, 0) : IntMatrix::from_columns(gens);
    SubgroupInfo sub = subgroup_from_generators(bd.m, gm);

    InertiaKernel N{std::move(gens), sub.group, std::move(gm), sub.to_canonical};

    for (const auto& t : N.gens) {
        if (!passes_dual_test(bd, t))
            throw std::logic_error("compute_N: kernel generator fails the dual membership test");
        if (!apply_sigma(bd, t).is_zero())
            throw std::logic_error("compute_N: kernel generator does not map to zero");
    }
    // Index formula |N| * |G| = prod m_j from surjectivity of ⊕G_j -> G.
    Int prod = 1;
    for (const Int& mj : bd.m) prod *= mj;
    if (N.group.order() * bd.G.order() != prod)
        throw std::logic_error("compute_N: index formula |N|*|G| = prod m_j violated");
    return N;
}

std::optional<std::vector<Int>> coords_in_N(const BuildingData& bd, const InertiaKernel& N,
                                            const std::vector<Int>& element) {
    auto c = solve_linear(N.gens_matrix, element, bd.m);
    if (!c) return std::nullopt;
    return N.to_canonical.apply_coords(*c);
}

KernelResult compute_K(const BuildingData& bd, const RhoImage& rho) {
    InertiaKernel N = compute_N(bd);
    std::vector<GroupElement> quotient_gens;
    std::vector<std::vector<Int>> rho_reduced;
    for (const auto& raw : rho.gens) {
        std::vector<Int> t = reduce_mod_m(bd, raw);
        if (!apply_sigma(bd, t).is_zero())
            throw RhoNotInN("rho generator maps to a nonzero element of G (not in N)");
        auto coords = coords_in_N(bd, N, t);
        if (!coords) throw RhoNotInN("rho generator is not in the subgroup N");
        quotient_gens.emplace_back(N.group, *coords);
        rho_reduced.push_back(std::move(t));
    }
    QuotientResult q = subgroup_quotient(N.group, quotient_gens);
    return KernelResult{std::move(N), std::move(q.group), std::move(q.projection),
                        std::move(rho_reduced)};
}

DeckGroupResult compute_G_tilde(const BuildingData& bd, const RhoImage& rho) {
    const std::size_t k = bd.branch_count();
    KernelResult kr = compute_K(bd, rho);

    std::vector<std::vector<Int>> rows;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Int> r(k);
        r[j] = bd.m[j];
        rows.push_back(std::move(r));
    }
    for (const auto& t : kr.rho_in_N) rows.push_back(t);
    CanonicalizeResult c = canonicalize(IntMatrix::from_rows(rows), k);
    FgAbGroup Gt = c.group;
    Homomorphism phi = c.to_canonical;  // Z^k -> Gtilde

    std::vector<GroupElement> gtilde;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Int> e(k);
        e[j] = 1;
        gtilde.emplace_back(Gt, phi.matrix.apply(e));
    }

    // proj_G: sends gtilde_j to g_j; assembled on canonical generators of
    // Gtilde through a section of phi.
    IntMatrix g_cols = k == 0 ? IntMatrix(bd.G.dim(), 0)
                              : IntMatrix::from_columns([&] {
                                    std::vector<std::vector<Int>> cc;
                                    for (std::size_t j = 0; j < k; ++j) cc.push_back(bd.g[j].coords);
                                    return cc;
                                }());
    IntMatrix sec = surjection_section(phi);
    Homomorphism proj_G(Gt, bd.G, g_cols * sec);

    // inc_K: canonical generator of K -> representative in N -> vector in
    // ⊕ Z/m_j -> class in Gtilde.
    std::vector<std::vector<Int>> inc_cols;
    for (std::size_t u = 0; u < kr.K.dim(); ++u) {
        auto in_N = hom_preimage(kr.proj_N_to_K, canonical_generator(kr.K, u).coords);
        if (!in_N) throw std::logic_error("compute_G_tilde: projection N -> K is not surjective");
        auto in_gens = hom_preimage(kr.N.to_canonical, *in_N);
        if (!in_gens) throw std::logic_error("compute_G_tilde: N coordinates not liftable");
        std::vector<Int> in_P = kr.N.gens_matrix.apply(*in_gens);
        inc_cols.push_back(phi.matrix.apply(in_P));
    }
    IntMatrix inc_m = inc_cols.empty() ? IntMatrix(Gt.dim(), 0) : IntMatrix::from_columns(inc_cols);
    Homomorphism inc_K(kr.K, Gt, std::move(inc_m));

    // Exactness and the branch-generator facts are verified on every
    // call, not assumed.
    if (!is_injective(inc_K)) throw std::logic_error("compute_G_tilde: inc_K not injective");
    if (!is_surjective(proj_G)) throw std::logic_error("compute_G_tilde: proj_G not surjective");
    if (!proj_G.compose_after(inc_K).is_zero_map())
        throw std::logic_error("compute_G_tilde: proj_G ∘ inc_K is nonzero");
    if (kr.K.order() * bd.G.order() != Gt.order())
        throw std::logic_error("compute_G_tilde: |Gtilde| != |K| * |G|");
    for (std::size_t j = 0; j < k; ++j) {
        if (!(proj_G.apply(gtilde[j]) == bd.g[j]))
            throw std::logic_error("compute_G_tilde: proj_G(gtilde_j) != g_j");
        if (gtilde[j].order() != bd.m[j])
            throw std::logic_error("compute_G_tilde: order(gtilde_j) != m_j");
    }

    return DeckGroupResult{std::move(Gt), std::move(inc_K), std::move(proj_G), std::move(gtilde),
                           std::move(phi)};
}

}  // namespace cover
