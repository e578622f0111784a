#include "cover/extclass.hpp"

namespace cover {

Homomorphism theta_map(const BuildingData& bd, const KernelResult& kr, const Decomposition& dec) {
    ValidationReport cols = verify_columns_in_N(bd, dec.C);
    if (!cols.ok())
        throw std::invalid_argument("theta_map: column outside N: " + cols.problems.front());
    std::vector<std::vector<Int>> images;
    for (std::size_t l = 0; l < dec.C.cols(); ++l) {
        std::vector<Int> col(bd.branch_count());
        for (std::size_t j = 0; j < bd.branch_count(); ++j) col[j] = pos_mod(dec.C(j, l), bd.m[j]);
        auto n_coords = coords_in_N(bd, kr.N, col);
        if (!n_coords) throw std::invalid_argument("theta_map: column passes the dual test but is not in N");
        images.push_back(kr.proj_N_to_K.apply_coords(*n_coords));
    }
    IntMatrix m = images.empty() ? IntMatrix(kr.K.dim(), 0) : IntMatrix::from_columns(images);
    return Homomorphism(make_group({}, dec.C.cols()), kr.K, std::move(m));
}

ExtensionClass compute_xi(const BuildingData& bd, const KernelResult& kr, const Decomposition& dec,
                          const CohomologyModel& coh) {
    Homomorphism theta = theta_map(bd, kr, dec);
    TensorProduct tp = tensor_with(coh.H2, kr.K);
    GroupElement acc = zero_element(tp.group);
    for (std::size_t l = 0; l < dec.M.size(); ++l) {
        GroupElement chern = coh.c1.apply(dec.M[l]);
        GroupElement theta_el(kr.K, theta.matrix.column(l));
        acc = acc + tp.eval(chern, theta_el);
    }
    return ExtensionClass{std::move(tp), std::move(acc)};
}

ExtensionClass compute_icf(const BuildingData& bd, const PicardModel& pic,
                           const DeckGroupResult& dg, const CohomologyModel& coh) {
    TensorProduct tp = tensor_with(coh.H2, dg.Gtilde);
    GroupElement acc = zero_element(tp.group);
    for (std::size_t j = 0; j < bd.branch_count(); ++j) {
        GroupElement chern = coh.c1.apply(pic.D[j]);
        acc = acc + tp.eval(chern, dg.gtilde[j]);
    }
    return ExtensionClass{std::move(tp), std::move(acc)};
}

bool check_xi_icf_consistency(const ExtensionClass& xi, const ExtensionClass& icf,
                              const Homomorphism& inc_K) {
    if (xi.model.left != icf.model.left)
        throw std::invalid_argument("check_xi_icf_consistency: classes over different H2 models");
    Homomorphism induced = tensor_induced_right(xi.model, icf.model, inc_K);
    return induced.apply(xi.value) == icf.value;
}

DivisibilityReport check_divisibility_vanishing(const BuildingData& bd, const PicardModel& pic,
                                                const DeckGroupResult& dg,
                                                const CohomologyModel& coh) {
    DivisibilityReport rep;
    rep.all_divisible = true;
    for (std::size_t j = 0; j < bd.branch_count(); ++j) {
        GroupElement chern = coh.c1.apply(pic.D[j]);
        auto x = solve_mixed_congruences(scaling_hom(coh.H2, bd.m[j]).matrix, chern.coords,
                                         coh.H2.moduli());
        bool div = x.has_value();
        rep.divisible.push_back(div);
        if (!div) rep.all_divisible = false;
    }
    if (rep.all_divisible) {
        ExtensionClass icf = compute_icf(bd, pic, dg, coh);
        rep.icf_vanishes = icf.is_zero();
        if (!rep.icf_vanishes)
            throw std::logic_error("check_divisibility_vanishing: divisible branch classes but icf != 0");
    }
    return rep;
}

namespace {

/// Generators of the n-torsion subgroup H[n].
std::vector<GroupElement> torsion_subgroup_gens(const FgAbGroup& H, const Int& n) {
    return hom_kernel(scaling_hom(H, n));
}

Int subgroup_order(const FgAbGroup& ambient, const std::vector<GroupElement>& gens) {
    return ambient.order() / subgroup_quotient(ambient, gens).group.order();
}

}  // namespace

CorollaryReport corollary_conditions(const FgAbGroup& Gamma, const BuildingData& bd,
                                     const DeckGroupResult& dg) {
    if (!Gamma.is_finite())
        throw std::invalid_argument("corollary_conditions: Gamma must be finite abelian");
    CorollaryReport rep;

    // Hom(Gamma, H) = prod_a H[gamma_a]; the restriction map is onto iff
    // proj_G maps Gtilde[gamma_a] onto G[gamma_a] for every a.
    rep.hom_surjective = true;
    rep.hom_trivial = true;
    for (std::size_t a = 0; a < Gamma.torsion_rank(); ++a) {
        const Int& ga = Gamma.invariants[a];
        std::vector<GroupElement> g_tors = torsion_subgroup_gens(bd.G, ga);
        Int g_tors_order = subgroup_order(bd.G, g_tors);
        if (g_tors_order != 1) rep.hom_trivial = false;

        std::vector<GroupElement> gt_tors = torsion_subgroup_gens(dg.Gtilde, ga);
        std::vector<GroupElement> image;
        for (const GroupElement& e : gt_tors) image.push_back(dg.proj_G.apply(e));
        Int image_order = subgroup_order(bd.G, image);
        if (image_order != g_tors_order) rep.hom_surjective = false;
    }

    rep.splits = sequence_splits(dg.inc_K, dg.proj_G).splits;
    rep.i_injective_guaranteed = rep.hom_surjective || rep.splits || rep.hom_trivial;
    return rep;
}

QuotientResult mod_n_quotient(const FgAbGroup& K, const Int& n) {
    std::vector<GroupElement> gens;
    for (std::size_t u = 0; u < K.dim(); ++u) gens.push_back(canonical_generator(K, u) * n);
    return subgroup_quotient(K, gens);
}

CyclicExtension realize_cyclic_extension(const Int& n, const FgAbGroup& K,
                                         const GroupElement& kappa_lift) {
    if (n < 1) throw std::invalid_argument("realize_cyclic_extension: n must be >= 1");
    if (!K.is_finite()) throw std::invalid_argument("realize_cyclic_extension: K must be finite");
    if (kappa_lift.group != K)
        throw std::invalid_argument("realize_cyclic_extension: kappa lift must live in K");
    const std::size_t dk = K.dim();

    // Presentation of E = (Z ⊕ K) / <(n, -kappa)>: generator 0 is the
    // lift of the cyclic generator, generators 1..dk are those of K.
    std::vector<std::vector<Int>> rows;
    for (std::size_t u = 0; u < dk; ++u) {
        std::vector<Int> r(dk + 1);
        r[u + 1] = K.invariants[u];
        rows.push_back(std::move(r));
    }
    {
        std::vector<Int> r(dk + 1);
        r[0] = n;
        for (std::size_t u = 0; u < dk; ++u) r[u + 1] = -kappa_lift.coords[u];
        rows.push_back(std::move(r));
    }
    CanonicalizeResult c = canonicalize(IntMatrix::from_rows(rows), dk + 1);

    // Inclusion of K = images of generators 1..dk.
    IntMatrix inc_m(c.group.dim(), dk);
    for (std::size_t u = 0; u < dk; ++u)
        for (std::size_t v = 0; v < c.group.dim(); ++v) inc_m(v, u) = c.to_canonical.matrix(v, u + 1);
    Homomorphism inc(K, c.group, std::move(inc_m));

    // Projection to Z/n kills K and sends the lift to 1.
    FgAbGroup zn = n == 1 ? make_group({}, 0) : make_group({n}, 0);
    IntMatrix proj_orig(zn.dim(), dk + 1);
    if (zn.dim() > 0) proj_orig(0, 0) = 1;
    IntMatrix sec = surjection_section(c.to_canonical);
    Homomorphism proj(c.group, zn, proj_orig * sec);

    if (!is_injective(inc)) throw std::logic_error("realize_cyclic_extension: K does not embed");
    if (!is_surjective(proj)) throw std::logic_error("realize_cyclic_extension: projection not onto");
    if (!proj.compose_after(inc).is_zero_map())
        throw std::logic_error("realize_cyclic_extension: proj ∘ inc nonzero");
    if (K.order() * n != c.group.order())
        throw std::logic_error("realize_cyclic_extension: order count violates exactness");

    bool splits = sequence_splits(inc, proj).splits;
    return CyclicExtension{std::move(c.group), std::move(inc), std::move(proj), splits};
}

}  // namespace cover
