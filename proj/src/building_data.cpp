#include "cover/building_data.hpp"

#include <stdexcept>

namespace cover {

Character::Character(FgAbGroup g, std::vector<Int> numerators) : group(std::move(g)) {
    if (!group.is_finite()) throw std::invalid_argument("Character: group must be finite");
    if (numerators.size() != group.dim()) throw std::invalid_argument("Character: bad coordinate count");
    num = std::move(numerators);
    for (std::size_t u = 0; u < num.size(); ++u) num[u] = pos_mod(num[u], group.invariants[u]);
}

std::pair<Int, Int> Character::eval(const GroupElement& x) const {
    if (x.group != group) throw std::invalid_argument("Character::eval: wrong group");
    Int den = 1;
    for (const Int& d : group.invariants) den = lcm(den, d);
    Int acc = 0;
    for (std::size_t u = 0; u < num.size(); ++u)
        acc += num[u] * x.coords[u] * (den / group.invariants[u]);
    acc = pos_mod(acc, den);
    Int g = gcd(acc, den);
    if (g == 0) return {Int(0), Int(1)};
    return {acc / g, den / g};
}

Int Character::order() const {
    Int o = 1;
    for (std::size_t u = 0; u < num.size(); ++u)
        if (num[u] != 0) o = lcm(o, group.invariants[u] / gcd(num[u], group.invariants[u]));
    return o;
}

bool Character::is_trivial() const {
    return std::all_of(num.begin(), num.end(), [](const Int& v) { return v == 0; });
}

Character Character::operator+(const Character& rhs) const {
    if (group != rhs.group) throw std::invalid_argument("character sum: mixed groups");
    std::vector<Int> n(num);
    for (std::size_t u = 0; u < n.size(); ++u) n[u] += rhs.num[u];
    return Character(group, std::move(n));
}

Character Character::operator*(const Int& n) const {
    std::vector<Int> v(num);
    for (Int& c : v) c *= n;
    return Character(group, std::move(v));
}

Character trivial_character(const FgAbGroup& g) {
    return Character(g, std::vector<Int>(g.dim()));
}

Character dual_generator(const FgAbGroup& g, std::size_t u) {
    std::vector<Int> n(g.dim());
    n.at(u) = 1;
    return Character(g, std::move(n));
}

ValidationReport validate_building_data(const BuildingData& bd) {
    ValidationReport rep;
    if (!bd.G.is_finite()) {
        rep.fail("Galois group must be finite");
        return rep;
    }
    const std::size_t k = bd.branch_count();
    if (bd.g.size() != k) rep.fail("branch generator count differs from inertia order count");
    for (std::size_t j = 0; j < std::min(k, bd.g.size()); ++j) {
        if (bd.g[j].group != bd.G) {
            rep.fail("branch " + std::to_string(j + 1) + ": generator lies in the wrong group");
            continue;
        }
        if (bd.g[j].order() != bd.m[j])
            rep.fail("branch " + std::to_string(j + 1) + ": inertia order mismatch (declared " +
                     to_string(bd.m[j]) + ", element has order " + to_string(bd.g[j].order()) + ")");
    }
    if (bd.g.size() == k && !bd.G.is_trivial()) {
        std::vector<GroupElement> gens(bd.g);
        if (!subgroup_quotient(bd.G, gens).group.is_trivial())
            rep.fail("not totally ramified: the inertia generators do not generate G");
    }
    if (bd.chi.size() != bd.chi_order.size()) {
        rep.fail("character order list length mismatch");
        return rep;
    }
    Int product = 1;
    for (std::size_t i = 0; i < bd.chi.size(); ++i) {
        if (bd.chi[i].group != bd.G) {
            rep.fail("character " + std::to_string(i + 1) + " lies in the wrong group");
            return rep;
        }
        if (bd.chi[i].order() != bd.chi_order[i])
            rep.fail("character " + std::to_string(i + 1) + ": declared order " +
                     to_string(bd.chi_order[i]) + " differs from actual order " +
                     to_string(bd.chi[i].order()));
        product *= bd.chi_order[i];
    }
    // G* = ⊕<chi_i>: the orders must multiply to |G| and the chi_i must
    // span the dual group. Characters of G = ⊕ Z/d_u are identified with
    // the group ⊕ Z/d_u via their numerators.
    if (rep.ok()) {
        if (product != bd.G.order()) {
            rep.fail("character generators do not decompose G* as a direct sum (order product " +
                     to_string(product) + " != |G| = " + to_string(bd.G.order()) + ")");
        } else {
            std::vector<GroupElement> duals;
            for (const Character& c : bd.chi) duals.emplace_back(bd.G, c.num);
            if (!subgroup_quotient(bd.G, duals).group.is_trivial())
                rep.fail("character generators do not span the character group");
        }
    }
    return rep;
}

ValidationReport validate_picard_model(const BuildingData& bd, const PicardModel& pic) {
    ValidationReport rep;
    if (pic.D.size() != bd.branch_count()) rep.fail("picard model: one class D_j per branch required");
    if (pic.Lgen.size() != bd.chi.size())
        rep.fail("picard model: one class L_{chi_i} per character generator required");
    for (const GroupElement& e : pic.D)
        if (e.group != pic.A) rep.fail("picard model: D class outside A");
    for (const GroupElement& e : pic.Lgen)
        if (e.group != pic.A) rep.fail("picard model: L class outside A");
    if (rep.ok()) {
        std::vector<GroupElement> gens(pic.D);
        gens.insert(gens.end(), pic.Lgen.begin(), pic.Lgen.end());
        if (!subgroup_quotient(pic.A, gens).group.is_trivial())
            rep.fail("picard model: A is not generated by the D_j and L_{chi_i}");
    }
    return rep;
}

std::vector<Int> character_components(const BuildingData& bd, const Character& chi) {
    std::vector<Int> a(bd.branch_count());
    for (std::size_t j = 0; j < bd.branch_count(); ++j) {
        auto [n, den] = chi.eval(bd.g[j]);
        // g_j has order m_j, so den | m_j and a_j = n * m_j / den.
        if (bd.m[j] % den != 0)
            throw std::invalid_argument("character_components: value denominator does not divide m_j");
        a[j] = pos_mod(n * (bd.m[j] / den), bd.m[j]);
    }
    return a;
}

std::optional<Character> character_from_components(const BuildingData& bd,
                                                   const std::vector<Int>& components) {
    if (components.size() != bd.branch_count())
        throw std::invalid_argument("character_from_components: wrong component count");
    // Solve chi(g_j) = a_j / m_j on canonical generators: with chi(e_u) =
    // n_u / d_u this reads sum_u (L/d_u) g_{j,u} n_u ≡ L a_j / m_j (mod L)
    // for L = lcm(d_u, m_j).
    Int L = 1;
    for (const Int& d : bd.G.invariants) L = lcm(L, d);
    for (const Int& mj : bd.m) L = lcm(L, mj);
    const std::size_t t = bd.G.dim();
    IntMatrix A(bd.branch_count(), t);
    std::vector<Int> b(bd.branch_count());
    std::vector<Int> moduli(bd.branch_count(), L);
    for (std::size_t j = 0; j < bd.branch_count(); ++j) {
        for (std::size_t u = 0; u < t; ++u)
            A(j, u) = (L / bd.G.invariants[u]) * bd.g[j].coords[u];
        b[j] = (L / bd.m[j]) * components[j];
    }
    auto sol = solve_mixed_congruences(A, b, moduli);
    if (!sol) return std::nullopt;
    return Character(bd.G, *sol);
}

std::vector<Int> character_basis_coords(const BuildingData& bd, const Character& chi) {
    // chi = sum b_i chi_i: solve over the canonical coordinates of G*.
    const std::size_t n = bd.chi.size(), t = bd.G.dim();
    IntMatrix A(t, n);
    std::vector<Int> moduli(t);
    for (std::size_t u = 0; u < t; ++u) {
        moduli[u] = bd.G.invariants[u];
        for (std::size_t i = 0; i < n; ++i) A(u, i) = bd.chi[i].num[u];
    }
    auto sol = solve_mixed_congruences(A, chi.num, moduli);
    if (!sol)
        throw std::invalid_argument("character_basis_coords: chi is not spanned by the generators");
    std::vector<Int> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = pos_mod((*sol)[i], bd.chi_order[i]);
    // The generators decompose G* as a direct sum, so the reduced
    // coordinates are forced; verify exactly.
    Character rebuilt = trivial_character(bd.G);
    for (std::size_t i = 0; i < n; ++i) rebuilt = rebuilt + bd.chi[i] * b[i];
    if (!(rebuilt == chi))
        throw std::logic_error("character_basis_coords: decomposition verification failed");
    return b;
}

ValidationReport check_characteristic_relations(const BuildingData& bd, const PicardModel& pic) {
    ValidationReport rep;
    for (std::size_t i = 0; i < bd.chi.size(); ++i) {
        const Int& d = bd.chi_order[i];
        std::vector<Int> a = character_components(bd, bd.chi[i]);
        GroupElement rhs = zero_element(pic.A);
        bool integral = true;
        for (std::size_t j = 0; j < bd.branch_count(); ++j) {
            Int numer = d * a[j];
            if (numer % bd.m[j] != 0) {
                rep.fail("relation " + std::to_string(i + 1) + ": coefficient d_i a_ij / m_j is not an integer at branch " +
                         std::to_string(j + 1));
                integral = false;
                continue;
            }
            rhs = rhs + pic.D[j] * (numer / bd.m[j]);
        }
        if (!integral) continue;
        GroupElement lhs = pic.Lgen[i] * d;
        if (!(lhs == rhs))
            rep.fail("relation " + std::to_string(i + 1) + ": d_i L_i != sum_j (d_i a_ij / m_j) D_j in A");
    }
    return rep;
}

GroupElement derive_eigensheaf_class(const BuildingData& bd, const PicardModel& pic,
                                     const Character& chi) {
    std::vector<Int> b = character_basis_coords(bd, chi);
    GroupElement out = zero_element(pic.A);
    for (std::size_t i = 0; i < b.size(); ++i) out = out + pic.Lgen[i] * b[i];
    for (std::size_t j = 0; j < bd.branch_count(); ++j) {
        Int num = 0;
        Int den = bd.m[j];
        for (std::size_t i = 0; i < b.size(); ++i)
            num += b[i] * character_components(bd, bd.chi[i])[j];
        Int q = floor_div(num, den);
        out = out + (-(pic.D[j] * q));
    }
    return out;
}

bool has_prime_power_characters(const BuildingData& bd) {
    for (const Int& d : bd.chi_order)
        if (factorize(d).size() > 1) return false;
    return true;
}

std::pair<BuildingData, PicardModel> refine_prime_power(const BuildingData& bd,
                                                        const PicardModel& pic) {
    BuildingData out = bd;
    out.chi.clear();
    out.chi_order.clear();
    PicardModel pout = pic;
    pout.Lgen.clear();
    for (std::size_t i = 0; i < bd.chi.size(); ++i) {
        auto factors = factorize(bd.chi_order[i]);
        if (factors.size() <= 1) {
            out.chi.push_back(bd.chi[i]);
            out.chi_order.push_back(bd.chi_order[i]);
            pout.Lgen.push_back(pic.Lgen[i]);
            continue;
        }
        // CRT split of the cyclic factor <chi_i>: for each prime power q
        // dividing d_i, the character (d_i/q) * w * chi_i has order q,
        // with w inverse of d_i/q modulo q; the pieces sum back to chi_i.
        const Int& d = bd.chi_order[i];
        for (const auto& [prime, exp] : factors) {
            Int q = 1;
            for (unsigned e = 0; e < exp; ++e) q *= prime;
            Int u = d / q;
            Int w = mod_inverse(u, q);
            Character piece = bd.chi[i] * pos_mod(u * w, d);
            out.chi.push_back(piece);
            out.chi_order.push_back(q);
            pout.Lgen.push_back(derive_eigensheaf_class(bd, pic, piece));
        }
    }
    return {std::move(out), std::move(pout)};
}

}  // namespace cover
