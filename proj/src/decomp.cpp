#include "cover/decomp.hpp"

#include "cover/congruence.hpp"

#include <algorithm>

namespace cover {

ValidationReport verify_columns_in_N(const BuildingData& bd, const IntMatrix& C) {
    ValidationReport rep;
    if (C.rows() != bd.branch_count()) {
        rep.fail("column matrix must have one row per branch");
        return rep;
    }
    Int L = 1;
    for (const Int& mj : bd.m) L = lcm(L, mj);
    std::vector<std::vector<Int>> comps;
    for (const Character& chi : bd.chi) comps.push_back(character_components(bd, chi));
    for (std::size_t l = 0; l < C.cols(); ++l) {
        for (std::size_t i = 0; i < bd.chi.size(); ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < bd.branch_count(); ++j)
                acc += comps[i][j] * C(j, l) * (L / bd.m[j]);
            if (acc % L != 0) {
                rep.fail("column " + std::to_string(l + 1) + " fails the relation of character " +
                         std::to_string(i + 1));
                break;
            }
        }
    }
    return rep;
}

namespace {

struct Piece {
    GroupElement elem;   // M_l as an element of A
    Int order;           // 0 for free
    Int prime;           // 0 for free
    unsigned exponent = 0;
    std::size_t canon_index = 0;  // canonical generator it came from
    Int unit;            // cofactor e_u / p^v (1 for free); inverse gives coordinates
};

/// Coordinates of x over the prime-power pieces: for a piece of order
/// p^v carved out of canonical generator u of order e_u, the coefficient
/// is x_u * inverse(e_u / p^v) mod p^v; free coordinates carry over.
std::vector<Int> coords_over_pieces(const std::vector<Piece>& pieces, const FgAbGroup& A,
                                    const std::vector<Int>& x) {
    std::vector<Int> out(pieces.size());
    for (std::size_t l = 0; l < pieces.size(); ++l) {
        const Piece& pc = pieces[l];
        if (pc.order == 0) {
            out[l] = x[pc.canon_index];
        } else {
            Int w = mod_inverse(pc.unit, pc.order);
            out[l] = pos_mod(x[pc.canon_index] * w, pc.order);
        }
    }
    return out;
}

std::vector<Piece> split_prime_power(const FgAbGroup& A) {
    std::vector<Piece> torsion, free_part;
    for (std::size_t u = 0; u < A.torsion_rank(); ++u) {
        const Int& e = A.invariants[u];
        for (const auto& [p, v] : factorize(e)) {
            Int q = 1;
            for (unsigned i = 0; i < v; ++i) q *= p;
            Int unit = e / q;
            std::vector<Int> c(A.dim());
            c[u] = unit;
            torsion.push_back(Piece{GroupElement(A, std::move(c)), q, p, v, u, unit});
        }
    }
    std::sort(torsion.begin(), torsion.end(), [](const Piece& a, const Piece& b) {
        if (a.prime != b.prime) return a.prime < b.prime;
        if (a.order != b.order) return a.order < b.order;
        return a.canon_index < b.canon_index;
    });
    for (std::size_t u = A.torsion_rank(); u < A.dim(); ++u) {
        std::vector<Int> c(A.dim());
        c[u] = 1;
        free_part.push_back(Piece{GroupElement(A, std::move(c)), Int(0), Int(0), 0, u, Int(1)});
    }
    torsion.insert(torsion.end(), free_part.begin(), free_part.end());
    return torsion;
}

}  // namespace

Decomposition decompose_divisors(const BuildingData& bd, const PicardModel& pic) {
    if (!has_prime_power_characters(bd))
        throw std::invalid_argument("decompose_divisors: character generators must have prime-power order; refine first");
    {
        ValidationReport rel = check_characteristic_relations(bd, pic);
        if (!rel.ok())
            throw std::invalid_argument("decompose_divisors: characteristic relations fail: " +
                                        rel.problems.front());
    }
    const std::size_t k = bd.branch_count();
    const FgAbGroup& A = pic.A;
    std::vector<Piece> pieces = split_prime_power(A);
    const std::size_t q = pieces.size();

    std::vector<std::vector<Int>> comps;
    for (const Character& chi : bd.chi) comps.push_back(character_components(bd, chi));

    // Initial coordinates of the branch and eigensheaf classes.
    IntMatrix C(k, q);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Int> c = coords_over_pieces(pieces, A, pic.D[j].coords);
        for (std::size_t l = 0; l < q; ++l) C(j, l) = c[l];
    }
    std::vector<std::vector<Int>> lambda;  // lambda[i][l]
    for (std::size_t i = 0; i < bd.chi.size(); ++i)
        lambda.push_back(coords_over_pieces(pieces, A, pic.Lgen[i].coords));

    Int mlcm = 1;
    for (const Int& mj : bd.m) mlcm = lcm(mlcm, mj);

    for (std::size_t l = 0; l < q; ++l) {
        const Piece& pc = pieces[l];
        if (pc.order == 0) {
            // Free coefficients are forced; the characteristic relations
            // make the column land in N automatically. Verified below.
            continue;
        }
        const Int& p = pc.prime;
        const unsigned alpha = pc.exponent;

        // Indices of p-power characters and the valuations of their orders.
        std::vector<std::size_t> Ip;
        unsigned max_alpha_i = 0;
        for (std::size_t i = 0; i < bd.chi.size(); ++i) {
            if (bd.chi_order[i] % p == 0) {
                Ip.push_back(i);
                max_alpha_i = std::max(max_alpha_i, p_valuation(bd.chi_order[i], p));
            }
        }

        // Stage 1: fix the congruences modulo the p-power orders d_i by
        // adding p^alpha * s to the column, with s from the lifting solver.
        unsigned beta = 0;
        for (std::size_t i : Ip) {
            unsigned ai = p_valuation(bd.chi_order[i], p);
            if (ai > alpha) beta = std::max(beta, ai - alpha);
        }
        if (beta > 0) {
            Int palpha = 1;
            for (unsigned e = 0; e < alpha; ++e) palpha *= p;
            LemmaSystem sys;
            sys.h = bd.m;
            sys.p = p;
            sys.gamma = beta;
            IntMatrix a_sel(Ip.size(), k);
            std::vector<Int> xs(Ip.size());
            std::vector<Int> ds(Ip.size());
            for (std::size_t r = 0; r < Ip.size(); ++r) {
                std::size_t i = Ip[r];
                ds[r] = bd.chi_order[i];
                for (std::size_t j = 0; j < k; ++j) a_sel(r, j) = comps[i][j];
                // d_i lambda_il - sum_j (d_i a_ij / m_j) c_jl = p^alpha x_i
                Int acc = ds[r] * lambda[i][l];
                for (std::size_t j = 0; j < k; ++j) {
                    Int numer = ds[r] * comps[i][j];
                    if (numer % bd.m[j] != 0)
                        throw DecompositionFailure("coefficient d_i a_ij / m_j not integral");
                    acc -= (numer / bd.m[j]) * C(j, l);
                }
                if (acc % palpha != 0)
                    throw DecompositionFailure("torsion congruence does not reduce mod the piece order");
                xs[r] = acc / palpha;
            }
            sys.a = std::move(a_sel);
            sys.d = std::move(ds);
            sys.x = std::move(xs);
            std::vector<Int> s;
            try {
                s = solve_lifting(sys);
            } catch (const InvalidHypotheses& e) {
                throw DecompositionFailure(std::string("lifting hypotheses failed: ") + e.what());
            }
            for (std::size_t j = 0; j < k; ++j) C(j, l) += palpha * s[j];
        }

        // Stage 2: clear the conditions of the characters coprime to p by
        // adding multiples of p^gamma, gamma large enough to keep stage 1.
        Int dcop = 1;
        for (std::size_t i = 0; i < bd.chi.size(); ++i)
            if (bd.chi_order[i] % p != 0) dcop = lcm(dcop, bd.chi_order[i]);
        if (dcop > 1) {
            unsigned gamma = max_alpha_i + alpha + 1;
            Int pg = 1;
            for (unsigned e = 0; e < gamma; ++e) pg *= p;
            Int inv = mod_inverse(pg, dcop);
            for (std::size_t j = 0; j < k; ++j) {
                Int t = pos_mod(-C(j, l) * inv, dcop);
                C(j, l) += pg * t;
                if (C(j, l) % dcop != 0)
                    throw DecompositionFailure("coprime cleanup failed to reach divisibility");
            }
        }

        // Normalize: the column may be shifted by any multiple of
        // lcm(o(M_l), lcm m_j) without leaving N or changing the classes.
        Int capQ = lcm(pc.order, mlcm);
        for (std::size_t j = 0; j < k; ++j) C(j, l) = pos_mod(C(j, l), capQ);
    }

    Decomposition dec;
    for (const Piece& pc : pieces) {
        dec.M.push_back(pc.elem);
        dec.orders.push_back(pc.order);
    }
    dec.C = std::move(C);

    ValidationReport cols = verify_columns_in_N(bd, dec.C);
    if (!cols.ok()) throw DecompositionFailure("constructed column escapes N: " + cols.problems.front());
    if (!decomposition_reconstructs(dec, pic))
        throw DecompositionFailure("decomposition does not reconstruct the branch classes");
    ValidationReport ds = verify_direct_sum(dec, A);
    if (!ds.ok()) throw DecompositionFailure("generators do not decompose A: " + ds.problems.front());
    return dec;
}

bool decomposition_reconstructs(const Decomposition& dec, const PicardModel& pic) {
    for (std::size_t j = 0; j < pic.D.size(); ++j) {
        GroupElement acc = zero_element(pic.A);
        for (std::size_t l = 0; l < dec.M.size(); ++l) acc = acc + dec.M[l] * dec.C(j, l);
        if (!(acc == pic.D[j])) return false;
    }
    return true;
}

ValidationReport verify_direct_sum(const Decomposition& dec, const FgAbGroup& A) {
    ValidationReport rep;
    Int torsion_order = 1;
    std::size_t free_count = 0;
    for (std::size_t l = 0; l < dec.M.size(); ++l) {
        Int actual = dec.M[l].order();
        if (actual != dec.orders[l]) {
            rep.fail("generator " + std::to_string(l + 1) + " has order " + to_string(actual) +
                     ", recorded " + to_string(dec.orders[l]));
            return rep;
        }
        if (dec.orders[l] == 0) ++free_count;
        else torsion_order *= dec.orders[l];
    }
    Int a_torsion = 1;
    for (const Int& d : A.invariants) a_torsion *= d;
    if (torsion_order != a_torsion) rep.fail("torsion orders do not multiply to |T(A)|");
    if (free_count != A.free_rank) rep.fail("free generator count differs from rank of A");
    if (!rep.ok()) return rep;

    std::vector<GroupElement> gens(dec.M);
    if (!subgroup_quotient(A, gens).group.is_trivial()) {
        rep.fail("generators do not span A");
        return rep;
    }
    // Relation lattice of the tuple must be the diagonal one.
    std::vector<std::vector<Int>> cols;
    for (const GroupElement& e : dec.M) cols.push_back(e.coords);
    IntMatrix gm = cols.empty() ? IntMatrix(A.dim(), 0) : IntMatrix::from_columns(cols);
    IntMatrix rel = tuple_relations(A.moduli(), gm);
    for (std::size_t r = 0; r < rel.rows(); ++r)
        for (std::size_t l = 0; l < dec.M.size(); ++l) {
            if (dec.orders[l] == 0) {
                if (rel(r, l) != 0) rep.fail("free generators admit a nontrivial relation");
            } else if (rel(r, l) % dec.orders[l] != 0) {
                rep.fail("relation lattice is finer than the diagonal of the orders");
            }
            if (!rep.ok()) return rep;
        }
    return rep;
}

Homomorphism random_automorphism(const FgAbGroup& G, std::mt19937_64& rng) {
    const std::size_t n = G.dim();
    if (n == 0) return identity_hom(G);
    std::uniform_int_distribution<int> small(-3, 3);
    for (int attempt = 0; attempt < 500; ++attempt) {
        IntMatrix m(n, n);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t u = 0; u < n; ++u) {
                if (v >= G.torsion_rank() && u < G.torsion_rank()) {
                    m(v, u) = 0;  // torsion cannot map to free generators
                } else {
                    m(v, u) = small(rng);
                }
            }
        if (!is_well_defined(G, G, m)) continue;
        Homomorphism h(G, G, m);
        if (is_injective(h) && is_surjective(h)) return h;
    }
    // Identity is always an automorphism; unreachable in practice.
    return identity_hom(G);
}

Decomposition decompose_divisors_randomized(const BuildingData& bd, const PicardModel& pic,
                                            std::mt19937_64& rng) {
    Homomorphism phi = random_automorphism(pic.A, rng);
    // Invert phi on canonical generators.
    IntMatrix inv_cols(pic.A.dim(), pic.A.dim());
    for (std::size_t u = 0; u < pic.A.dim(); ++u) {
        auto pre = hom_preimage(phi, canonical_generator(pic.A, u).coords);
        if (!pre) throw std::logic_error("random_automorphism: not invertible");
        for (std::size_t v = 0; v < pic.A.dim(); ++v) inv_cols(v, u) = (*pre)[v];
    }
    Homomorphism phi_inv(pic.A, pic.A, std::move(inv_cols));

    // Decompose the pulled-back model, then push the generators forward:
    // D_j = phi(phi^{-1}(D_j)) = sum_l c_jl phi(M'_l).
    PicardModel pulled = pic;
    for (GroupElement& e : pulled.D) e = phi_inv.apply(e);
    for (GroupElement& e : pulled.Lgen) e = phi_inv.apply(e);
    Decomposition dec = decompose_divisors(bd, pulled);
    for (GroupElement& e : dec.M) e = phi.apply(e);

    // Shift torsion columns by random multiples of lcm(o_l, lcm m_j):
    // such shifts stay inside N and do not move the classes.
    Int mlcm = 1;
    for (const Int& mj : bd.m) mlcm = lcm(mlcm, mj);
    std::uniform_int_distribution<int> small(-2, 2);
    for (std::size_t l = 0; l < dec.M.size(); ++l) {
        if (dec.orders[l] == 0) continue;
        Int q = lcm(dec.orders[l], mlcm);
        for (std::size_t j = 0; j < bd.branch_count(); ++j) dec.C(j, l) += q * small(rng);
    }

    ValidationReport cols = verify_columns_in_N(bd, dec.C);
    if (!cols.ok()) throw std::logic_error("randomized decomposition escaped N");
    if (!decomposition_reconstructs(dec, pic))
        throw std::logic_error("randomized decomposition does not reconstruct the classes");
    ValidationReport ds = verify_direct_sum(dec, pic.A);
    if (!ds.ok()) throw std::logic_error("randomized decomposition broke the direct sum");
    return dec;
}

}  // namespace cover
