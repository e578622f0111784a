#include "cover/abgrp.hpp"

#include <algorithm>
#include <stdexcept>

namespace cover {

Int FgAbGroup::order() const {
    if (!is_finite()) throw std::logic_error("order(): group is infinite");
    Int o = 1;
    for (const Int& d : invariants) o *= d;
    return o;
}

Int FgAbGroup::modulus(std::size_t u) const {
    if (u >= dim()) throw std::out_of_range("modulus: bad generator index");
    return u < invariants.size() ? invariants[u] : Int(0);
}

std::vector<Int> FgAbGroup::moduli() const {
    std::vector<Int> m(invariants);
    m.resize(dim(), Int(0));
    return m;
}

FgAbGroup make_group(std::vector<Int> invariants, std::size_t free_rank) {
    for (std::size_t u = 0; u < invariants.size(); ++u) {
        if (invariants[u] < 2) throw std::invalid_argument("make_group: invariant factor < 2");
        if (u > 0 && invariants[u] % invariants[u - 1] != 0)
            throw std::invalid_argument("make_group: invariant factors must form a divisibility chain");
    }
    return FgAbGroup{std::move(invariants), free_rank};
}

std::vector<Int> reduce_coords(const FgAbGroup& g, std::vector<Int> coords) {
    if (coords.size() != g.dim()) throw std::invalid_argument("reduce_coords: dimension mismatch");
    for (std::size_t u = 0; u < g.torsion_rank(); ++u) coords[u] = pos_mod(coords[u], g.invariants[u]);
    return coords;
}

GroupElement::GroupElement(FgAbGroup g, std::vector<Int> c) : group(std::move(g)) {
    coords = reduce_coords(group, std::move(c));
}

bool GroupElement::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Int& v) { return v == 0; });
}

Int GroupElement::order() const {
    Int o = 1;
    for (std::size_t u = 0; u < group.torsion_rank(); ++u) {
        if (coords[u] != 0) o = lcm(o, group.invariants[u] / gcd(coords[u], group.invariants[u]));
    }
    for (std::size_t u = group.torsion_rank(); u < group.dim(); ++u)
        if (coords[u] != 0) return 0;  // infinite
    return o;
}

GroupElement GroupElement::operator+(const GroupElement& rhs) const {
    if (group != rhs.group) throw std::invalid_argument("element addition: mixed groups");
    std::vector<Int> c(coords);
    for (std::size_t u = 0; u < c.size(); ++u) c[u] += rhs.coords[u];
    return GroupElement(group, std::move(c));
}

GroupElement GroupElement::operator-() const { return *this * Int(-1); }

GroupElement GroupElement::operator*(const Int& n) const {
    std::vector<Int> c(coords);
    for (Int& v : c) v *= n;
    return GroupElement(group, std::move(c));
}

GroupElement zero_element(const FgAbGroup& g) { return GroupElement(g, std::vector<Int>(g.dim())); }

GroupElement canonical_generator(const FgAbGroup& g, std::size_t u) {
    std::vector<Int> c(g.dim());
    c.at(u) = 1;
    return GroupElement(g, std::move(c));
}

bool is_well_defined(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& m) {
    if (m.rows() != target.dim() || m.cols() != source.dim()) return false;
    for (std::size_t u = 0; u < source.torsion_rank(); ++u) {
        const Int& d = source.invariants[u];
        for (std::size_t v = 0; v < target.dim(); ++v) {
            Int image = d * m(v, u);
            if (v < target.torsion_rank()) {
                if (image % target.invariants[v] != 0) return false;
            } else {
                if (image != 0) return false;
            }
        }
    }
    return true;
}

Homomorphism::Homomorphism(FgAbGroup src, FgAbGroup tgt, IntMatrix m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    if (!is_well_defined(source, target, matrix))
        throw std::invalid_argument("Homomorphism: matrix is not well defined on the source");
}

GroupElement Homomorphism::apply(const GroupElement& x) const {
    if (x.group != source) throw std::invalid_argument("Homomorphism::apply: wrong source group");
    return GroupElement(target, matrix.apply(x.coords));
}

std::vector<Int> Homomorphism::apply_coords(const std::vector<Int>& coords) const {
    return reduce_coords(target, matrix.apply(coords));
}

Homomorphism Homomorphism::compose_after(const Homomorphism& inner) const {
    if (inner.target != source) throw std::invalid_argument("compose: type mismatch");
    return Homomorphism(inner.source, target, matrix * inner.matrix);
}

bool Homomorphism::is_zero_map() const {
    for (std::size_t u = 0; u < source.dim(); ++u)
        if (!GroupElement(target, matrix.column(u)).is_zero()) return false;
    return true;
}

Homomorphism identity_hom(const FgAbGroup& g) {
    return Homomorphism(g, g, IntMatrix::identity(g.dim()));
}

Homomorphism zero_hom(const FgAbGroup& source, const FgAbGroup& target) {
    return Homomorphism(source, target, IntMatrix(target.dim(), source.dim()));
}

Homomorphism scaling_hom(const FgAbGroup& g, const Int& n) {
    IntMatrix m(g.dim(), g.dim());
    for (std::size_t u = 0; u < g.dim(); ++u) m(u, u) = n;
    return Homomorphism(g, g, std::move(m));
}

CanonicalizeResult canonicalize(const IntMatrix& relations, std::size_t num_generators) {
    if (relations.rows() > 0 && relations.cols() != num_generators)
        throw std::invalid_argument("canonicalize: relation width != generator count");
    // Elements are column vectors, so the relation subgroup is the column
    // space of relations^T.
    IntMatrix rel_cols =
        relations.rows() == 0 ? IntMatrix(num_generators, 0) : relations.transposed();
    SnfResult s = snf(rel_cols);
    // After U*A*V = D, the composite x -> U x identifies Z^n / col(A) with
    // Z^n / col(D): coordinate u is Z/d_u (dropped when d_u = 1) and free
    // when the diagonal runs out.
    std::vector<Int> invariants;
    std::vector<std::size_t> keep;
    for (std::size_t u = 0; u < s.rank; ++u) {
        if (s.D(u, u) != 1) {
            invariants.push_back(s.D(u, u));
            keep.push_back(u);
        }
    }
    std::size_t free_rank = num_generators - s.rank;
    for (std::size_t u = s.rank; u < num_generators; ++u) keep.push_back(u);

    FgAbGroup group = make_group(invariants, free_rank);
    IntMatrix to_canon(group.dim(), num_generators);
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t j = 0; j < num_generators; ++j) {
            Int v = s.U(keep[r], j);
            to_canon(r, j) = (r < group.torsion_rank()) ? pos_mod(v, group.invariants[r]) : v;
        }
    Homomorphism h(make_group({}, num_generators), group, std::move(to_canon));
    return CanonicalizeResult{std::move(group), std::move(h)};
}

namespace {

/// Columns that cancel target moduli: one column modulus*e_v per torsion
/// coordinate v of `moduli`.
IntMatrix relation_columns(const std::vector<Int>& moduli) {
    std::vector<std::vector<Int>> cols;
    for (std::size_t v = 0; v < moduli.size(); ++v) {
        if (moduli[v] != 0) {
            std::vector<Int> c(moduli.size());
            c[v] = moduli[v];
            cols.push_back(std::move(c));
        }
    }
    if (cols.empty()) return IntMatrix(moduli.size(), 0);
    return IntMatrix::from_columns(cols);
}

/// Lattice of x with M x = 0 in the modular ambient given by moduli;
/// basis returned as columns restricted to the x block.
IntMatrix solution_lattice(const IntMatrix& M, const std::vector<Int>& moduli) {
    IntMatrix ext = M.hstack(relation_columns(moduli));
    IntMatrix ker = kernel_lattice(ext);
    IntMatrix out(M.cols(), ker.cols());
    for (std::size_t i = 0; i < M.cols(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) out(i, j) = ker(i, j);
    return out;
}

}  // namespace

std::vector<GroupElement> hom_kernel(const Homomorphism& f) {
    IntMatrix lat = solution_lattice(f.matrix, f.target.moduli());
    std::vector<GroupElement> gens;
    for (std::size_t j = 0; j < lat.cols(); ++j) {
        GroupElement e(f.source, lat.column(j));
        if (!e.is_zero()) gens.push_back(std::move(e));
    }
    return gens;
}

QuotientResult subgroup_quotient(const FgAbGroup& G, const std::vector<GroupElement>& gens) {
    std::vector<std::vector<Int>> rows;
    for (std::size_t u = 0; u < G.torsion_rank(); ++u) {
        std::vector<Int> r(G.dim());
        r[u] = G.invariants[u];
        rows.push_back(std::move(r));
    }
    for (const GroupElement& g : gens) {
        if (g.group != G) throw std::invalid_argument("subgroup_quotient: element of wrong group");
        rows.push_back(g.coords);
    }
    IntMatrix rel = rows.empty() ? IntMatrix(0, G.dim()) : IntMatrix::from_rows(rows);
    CanonicalizeResult c = canonicalize(rel, G.dim());
    Homomorphism proj(G, c.group, c.to_canonical.matrix);
    return QuotientResult{std::move(c.group), std::move(proj)};
}

std::optional<std::vector<Int>> solve_mixed_congruences(const IntMatrix& A,
                                                        const std::vector<Int>& b,
                                                        const std::vector<Int>& moduli) {
    auto sol = solve_linear(A, b, moduli);
    if (sol) {
        // Exact witness check before returning.
        std::vector<Int> y = A.apply(*sol);
        for (std::size_t i = 0; i < y.size(); ++i) {
            Int diff = y[i] - b[i];
            bool ok = (moduli[i] == 0) ? diff == 0 : diff % moduli[i] == 0;
            if (!ok) throw std::logic_error("solve_mixed_congruences: witness verification failed");
        }
    }
    return sol;
}

IntMatrix tuple_relations(const std::vector<Int>& ambient_moduli, const IntMatrix& gens) {
    if (gens.rows() != ambient_moduli.size())
        throw std::invalid_argument("tuple_relations: ambient dimension mismatch");
    return solution_lattice(gens, ambient_moduli).transposed();
}

SubgroupInfo subgroup_from_generators(const std::vector<Int>& ambient_moduli,
                                      const IntMatrix& gens) {
    IntMatrix rel = tuple_relations(ambient_moduli, gens);
    CanonicalizeResult c = canonicalize(rel, gens.cols());
    return SubgroupInfo{c.group, gens, c.to_canonical};
}

std::optional<std::vector<Int>> subgroup_coords(const SubgroupInfo& sub,
                                                const std::vector<Int>& ambient_moduli,
                                                const std::vector<Int>& element) {
    auto c = solve_linear(sub.gens, element, ambient_moduli);
    if (!c) return std::nullopt;
    return sub.to_canonical.apply_coords(*c);
}

std::optional<std::vector<Int>> hom_preimage(const Homomorphism& hom,
                                             const std::vector<Int>& target_coords) {
    return solve_linear(hom.matrix, target_coords, hom.target.moduli());
}

IntMatrix surjection_section(const Homomorphism& hom) {
    std::vector<std::vector<Int>> cols;
    for (std::size_t v = 0; v < hom.target.dim(); ++v) {
        auto pre = hom_preimage(hom, canonical_generator(hom.target, v).coords);
        if (!pre) throw std::invalid_argument("surjection_section: map is not surjective");
        cols.push_back(*pre);
    }
    if (cols.empty()) return IntMatrix(hom.source.dim(), 0);
    return IntMatrix::from_columns(cols);
}

bool is_injective(const Homomorphism& hom) { return hom_kernel(hom).empty(); }

bool is_surjective(const Homomorphism& hom) {
    std::vector<GroupElement> images;
    for (std::size_t u = 0; u < hom.source.dim(); ++u)
        images.emplace_back(hom.target, hom.matrix.column(u));
    return subgroup_quotient(hom.target, images).group.is_trivial();
}

GroupElement TensorProduct::eval(const GroupElement& a, const GroupElement& b) const {
    if (a.group != left || b.group != right)
        throw std::invalid_argument("TensorProduct::eval: wrong factor groups");
    std::vector<Int> pure(pairs.size());
    for (std::size_t idx = 0; idx < pairs.size(); ++idx)
        pure[idx] = a.coords[pairs[idx].first] * b.coords[pairs[idx].second];
    return GroupElement(group, pair_to_canonical.matrix.apply(pure));
}

TensorProduct tensor_with(const FgAbGroup& G, const FgAbGroup& K) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<Int> orders;  // 0 = free
    auto push = [&](std::size_t alpha, std::size_t beta) {
        Int da = G.modulus(alpha), eb = K.modulus(beta);
        Int o;
        if (da == 0 && eb == 0) o = 0;
        else if (da == 0) o = eb;
        else if (eb == 0) o = da;
        else o = gcd(da, eb);
        pairs.emplace_back(alpha, beta);
        orders.push_back(o);
    };
    // Free generators of the left factor first; gives stable coordinates
    // for the H2 ⊗ K models downstream.
    for (std::size_t alpha = G.torsion_rank(); alpha < G.dim(); ++alpha)
        for (std::size_t beta = 0; beta < K.dim(); ++beta) push(alpha, beta);
    for (std::size_t alpha = 0; alpha < G.torsion_rank(); ++alpha)
        for (std::size_t beta = 0; beta < K.dim(); ++beta) push(alpha, beta);

    std::vector<std::vector<Int>> rows;
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        if (orders[idx] != 0) {
            std::vector<Int> r(pairs.size());
            r[idx] = orders[idx];
            rows.push_back(std::move(r));
        }
    }
    IntMatrix rel = rows.empty() ? IntMatrix(0, pairs.size()) : IntMatrix::from_rows(rows);
    CanonicalizeResult c = canonicalize(rel, pairs.size());
    return TensorProduct{c.group, G, K, std::move(pairs), c.to_canonical};
}

Homomorphism tensor_induced_right(const TensorProduct& src, const TensorProduct& dst,
                                  const Homomorphism& f) {
    if (src.left != dst.left || f.source != src.right || f.target != dst.right)
        throw std::invalid_argument("tensor_induced_right: type mismatch");
    std::vector<std::vector<Int>> cols;
    for (std::size_t u = 0; u < src.group.dim(); ++u) {
        auto pre = hom_preimage(src.pair_to_canonical, canonical_generator(src.group, u).coords);
        if (!pre) throw std::logic_error("tensor_induced_right: pair presentation not surjective");
        GroupElement image = zero_element(dst.group);
        for (std::size_t idx = 0; idx < src.pairs.size(); ++idx) {
            if ((*pre)[idx] == 0) continue;
            GroupElement a = canonical_generator(src.left, src.pairs[idx].first);
            GroupElement fb = f.apply(canonical_generator(src.right, src.pairs[idx].second));
            image = image + dst.eval(a, fb) * (*pre)[idx];
        }
        cols.push_back(image.coords);
    }
    IntMatrix m = cols.empty() ? IntMatrix(dst.group.dim(), 0) : IntMatrix::from_columns(cols);
    return Homomorphism(src.group, dst.group, std::move(m));
}

SplitResult sequence_splits(const Homomorphism& inc, const Homomorphism& proj) {
    const FgAbGroup& K = inc.source;
    const FgAbGroup& E = inc.target;
    const FgAbGroup& G = proj.target;
    if (proj.source != E) throw std::invalid_argument("sequence_splits: middle groups differ");
    if (!K.is_finite() || !E.is_finite() || !G.is_finite())
        throw std::invalid_argument("sequence_splits: groups must be finite");
    if (!is_injective(inc)) throw std::invalid_argument("sequence_splits: inc is not injective");
    if (!is_surjective(proj)) throw std::invalid_argument("sequence_splits: proj is not surjective");
    if (!proj.compose_after(inc).is_zero_map())
        throw std::invalid_argument("sequence_splits: proj ∘ inc is nonzero");
    if (K.order() * G.order() != E.order())
        throw std::invalid_argument("sequence_splits: image(inc) != kernel(proj)");

    // Ext class over the free presentation 0 -> ⊕ d_u Z -> Z^n -> G -> 0:
    // lift each generator, read off kappa_u = inc^{-1}(d_u * lift), and
    // split iff every kappa_u is divisible by d_u inside K.
    std::vector<std::vector<Int>> section_cols;
    for (std::size_t u = 0; u < G.dim(); ++u) {
        const Int d = G.invariants[u];
        auto lift = hom_preimage(proj, canonical_generator(G, u).coords);
        if (!lift) throw std::logic_error("sequence_splits: lost surjectivity");
        GroupElement e_hat(E, *lift);
        GroupElement rel_image = e_hat * d;
        auto kappa = hom_preimage(inc, rel_image.coords);
        if (!kappa) throw std::logic_error("sequence_splits: relation image escapes inc(K)");
        GroupElement kappa_el(K, *kappa);
        auto z = solve_mixed_congruences(scaling_hom(K, d).matrix, kappa_el.coords, K.moduli());
        if (!z) return SplitResult{false, std::nullopt};
        GroupElement corrected = e_hat + (-inc.apply(GroupElement(K, *z)));
        section_cols.push_back(corrected.coords);
    }
    IntMatrix m = section_cols.empty() ? IntMatrix(E.dim(), 0) : IntMatrix::from_columns(section_cols);
    Homomorphism section(G, E, std::move(m));
    Homomorphism ps = proj.compose_after(section);
    for (std::size_t u = 0; u < G.dim(); ++u)
        if (GroupElement(G, ps.matrix.column(u)) != canonical_generator(G, u))
            throw std::logic_error("sequence_splits: section verification failed");
    return SplitResult{true, std::move(section)};
}

}  // namespace cover
