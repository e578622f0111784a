#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace testsupport {

using cover::Int;

std::vector<Vec> enumerate_ambient(const std::vector<std::int64_t>& moduli) {
    std::vector<Vec> out{Vec(moduli.size(), 0)};
    for (std::size_t u = 0; u < moduli.size(); ++u) {
        std::vector<Vec> next;
        next.reserve(out.size() * moduli[u]);
        for (const Vec& v : out)
            for (std::int64_t c = 0; c < moduli[u]; ++c) {
                Vec w = v;
                w[u] = c;
                next.push_back(std::move(w));
            }
        out = std::move(next);
    }
    return out;
}

Vec add_mod(const Vec& a, const Vec& b, const std::vector<std::int64_t>& moduli) {
    Vec out(a.size());
    for (std::size_t u = 0; u < a.size(); ++u) out[u] = (a[u] + b[u]) % moduli[u];
    return out;
}

Vec scale_mod(const Vec& a, std::int64_t k, const std::vector<std::int64_t>& moduli) {
    Vec out(a.size());
    for (std::size_t u = 0; u < a.size(); ++u) {
        std::int64_t v = (a[u] * (k % moduli[u])) % moduli[u];
        out[u] = (v + moduli[u]) % moduli[u];
    }
    return out;
}

std::set<Vec> subgroup_closure(const std::vector<Vec>& gens,
                               const std::vector<std::int64_t>& moduli) {
    std::set<Vec> closure{Vec(moduli.size(), 0)};
    std::vector<Vec> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const Vec& v : frontier)
            for (const Vec& g : gens) {
                Vec w = add_mod(v, g, moduli);
                if (closure.insert(w).second) next.push_back(std::move(w));
            }
        frontier = std::move(next);
    }
    return closure;
}

namespace {

/// Invariant factors of a finite abelian group of the given order from
/// its torsion counts: |Q[p^j]| = p^{sum_i min(j, lambda_i)}, so the
/// exponent differences count the lambda_i >= j.
std::vector<std::int64_t> invariants_from_counts(
    std::int64_t order, const std::function<std::int64_t(std::int64_t)>& torsion_count) {
    std::vector<std::int64_t> primes;
    {
        std::int64_t n = order;
        for (std::int64_t p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                primes.push_back(p);
                while (n % p == 0) n /= p;
            }
        if (n > 1) primes.push_back(n);
    }
    auto ilog = [](std::int64_t v, std::int64_t p) {
        int a = 0;
        while (v > 1) {
            v /= p;
            ++a;
        }
        return a;
    };
    std::map<std::int64_t, std::vector<int>> lambdas;  // prime -> descending exponent list
    for (std::int64_t p : primes) {
        std::vector<int> geq;  // geq[j-1] = #{i : lambda_i >= j}
        int prev = 0;
        std::int64_t pj = 1;
        for (int j = 1;; ++j) {
            pj *= p;
            int a = ilog(torsion_count(pj), p);
            int cj = a - prev;
            if (cj <= 0) break;
            geq.push_back(cj);
            prev = a;
        }
        std::vector<int> lam;
        for (std::size_t j = geq.size(); j >= 1; --j) {
            int eq = geq[j - 1] - (j < geq.size() ? geq[j] : 0);
            for (int c = 0; c < eq; ++c) lam.push_back(static_cast<int>(j));
        }
        lambdas[p] = std::move(lam);  // already descending
    }
    std::size_t rank = 0;
    for (const auto& [p, lam] : lambdas) rank = std::max(rank, lam.size());
    std::vector<std::int64_t> invariants(rank, 1);
    for (const auto& [p, lam] : lambdas)
        for (std::size_t i = 0; i < lam.size(); ++i) {
            std::int64_t q = 1;
            for (int e = 0; e < lam[i]; ++e) q *= p;
            invariants[i] *= q;  // position 0 pairs the largest exponents
        }
    std::reverse(invariants.begin(), invariants.end());
    return invariants;
}

}  // namespace

std::vector<std::int64_t> quotient_invariants(const std::vector<std::int64_t>& moduli,
                                              const std::set<Vec>& S) {
    std::vector<Vec> ambient = enumerate_ambient(moduli);
    std::int64_t order = static_cast<std::int64_t>(ambient.size() / S.size());
    auto torsion_count = [&](std::int64_t d) {
        std::int64_t c = 0;
        for (const Vec& x : ambient)
            if (S.count(scale_mod(x, d, moduli))) ++c;
        return c / static_cast<std::int64_t>(S.size());
    };
    return invariants_from_counts(order, torsion_count);
}

std::vector<std::int64_t> subgroup_invariants(const std::vector<std::int64_t>& moduli,
                                              const std::set<Vec>& S) {
    auto torsion_count = [&](std::int64_t d) {
        std::int64_t c = 0;
        for (const Vec& x : S) {
            Vec y = scale_mod(x, d, moduli);
            if (std::all_of(y.begin(), y.end(), [](std::int64_t v) { return v == 0; })) ++c;
        }
        return c;
    };
    return invariants_from_counts(static_cast<std::int64_t>(S.size()), torsion_count);
}

std::vector<std::int64_t> brute_quotient_invariants(const std::vector<std::int64_t>& moduli,
                                                    const std::vector<Vec>& gens) {
    return quotient_invariants(moduli, subgroup_closure(gens, moduli));
}

std::vector<std::int64_t> to_int64(const std::vector<Int>& v) {
    std::vector<std::int64_t> out;
    for (const Int& x : v) out.push_back(static_cast<std::int64_t>(x));
    return out;
}

std::vector<Int> to_int(const Vec& v) {
    std::vector<Int> out;
    for (std::int64_t x : v) out.push_back(Int(x));
    return out;
}

Int minor_gcd(const cover::IntMatrix& m, std::size_t size) {
    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    auto combos = [](std::size_t n, std::size_t k) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        if (k > n) return out;
        while (true) {
            out.push_back(idx);
            std::size_t i = k;
            while (i-- > 0) {
                if (idx[i] != i + n - k) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) return out;
            }
        }
    };
    row_sets = combos(m.rows(), size);
    col_sets = combos(m.cols(), size);
    Int g = 0;
    for (const auto& rs : row_sets)
        for (const auto& cs : col_sets) {
            cover::IntMatrix sub(size, size);
            for (std::size_t i = 0; i < size; ++i)
                for (std::size_t j = 0; j < size; ++j) sub(i, j) = m(rs[i], cs[j]);
            g = cover::gcd(g, sub.determinant());
        }
    return g;
}

cover::FgAbGroup random_finite_group(std::mt19937_64& rng, std::int64_t max_order) {
    std::uniform_int_distribution<int> rank_dist(1, 3);
    std::uniform_int_distribution<int> base_dist(2, 8);
    std::uniform_int_distribution<int> mult_dist(1, 3);
    for (;;) {
        int t = rank_dist(rng);
        std::vector<Int> inv;
        Int d = base_dist(rng);
        Int order = 1;
        bool ok = true;
        for (int i = 0; i < t; ++i) {
            if (i > 0) d *= mult_dist(rng);
            order *= d;
            if (order > max_order) {
                ok = false;
                break;
            }
            inv.push_back(d);
        }
        if (ok && !inv.empty()) return cover::make_group(inv, 0);
    }
}

cover::GroupElement random_element(std::mt19937_64& rng, const cover::FgAbGroup& g) {
    std::vector<Int> c(g.dim());
    for (std::size_t u = 0; u < g.dim(); ++u) {
        if (g.modulus(u) == 0) {
            std::uniform_int_distribution<int> d(-4, 4);
            c[u] = d(rng);
        } else {
            std::uniform_int_distribution<std::int64_t> d(0, static_cast<std::int64_t>(g.modulus(u)) - 1);
            c[u] = d(rng);
        }
    }
    return cover::GroupElement(g, std::move(c));
}

cover::BuildingData random_building_data(std::mt19937_64& rng, std::int64_t max_order,
                                         std::size_t max_branches) {
    for (;;) {
        cover::FgAbGroup G = random_finite_group(rng, max_order);
        std::uniform_int_distribution<std::size_t> kd(1, max_branches);
        std::size_t k = kd(rng);
        std::vector<cover::GroupElement> gens;
        for (std::size_t j = 0; j < k; ++j) {
            cover::GroupElement e = random_element(rng, G);
            if (e.is_zero()) e = cover::canonical_generator(G, 0);
            gens.push_back(std::move(e));
        }
        if (!cover::subgroup_quotient(G, gens).group.is_trivial()) continue;

        cover::BuildingData bd;
        bd.G = G;
        for (auto& e : gens) {
            bd.m.push_back(e.order());
            bd.g.push_back(e);
        }
        for (std::size_t u = 0; u < G.dim(); ++u) {
            bd.chi.push_back(cover::dual_generator(G, u));
            bd.chi_order.push_back(G.invariants[u]);
        }
        cover::ValidationReport rep = cover::validate_building_data(bd);
        if (rep.ok()) return bd;
    }
}

cover::LemmaSystem random_lemma_system(std::mt19937_64& rng, std::int64_t max_p_gamma,
                                       std::size_t max_m) {
    std::uniform_int_distribution<int> pd(0, 1);
    std::uniform_int_distribution<std::size_t> md(1, max_m);
    for (;;) {
        cover::LemmaSystem sys;
        sys.p = pd(rng) == 0 ? 2 : 3;
        std::int64_t p64 = static_cast<std::int64_t>(sys.p);
        unsigned max_gamma = 0;
        std::int64_t pg = 1;
        while (pg * p64 <= max_p_gamma) {
            pg *= p64;
            ++max_gamma;
        }
        std::uniform_int_distribution<unsigned> gd(1, max_gamma);
        sys.gamma = gd(rng);
        std::size_t m = md(rng);

        // Ambient orders: a power of p times an occasional coprime factor.
        std::uniform_int_distribution<int> ed(0, 3);
        std::uniform_int_distribution<int> cop(0, 2);
        std::vector<unsigned> pexp(m);
        for (std::size_t j = 0; j < m; ++j) {
            pexp[j] = ed(rng);
            Int h = 1;
            for (unsigned e = 0; e < pexp[j]; ++e) h *= sys.p;
            static const int coprimes2[] = {1, 3, 5};
            static const int coprimes3[] = {1, 2, 5};
            h *= (sys.p == 2 ? coprimes2[cop(rng)] : coprimes3[cop(rng)]);
            sys.h.push_back(h);
        }

        // Characters: pick distinct leading coordinates with positive
        // p-exponent; chi_i = (h_j / p^alpha) * (unit) zeta_j plus p-safe
        // noise on later coordinates keeps the hypotheses intact.
        std::vector<std::size_t> usable;
        for (std::size_t j = 0; j < m; ++j)
            if (pexp[j] >= 1) usable.push_back(j);
        if (usable.empty()) continue;
        std::shuffle(usable.begin(), usable.end(), rng);
        std::uniform_int_distribution<std::size_t> td(1, usable.size());
        std::size_t t = td(rng);

        std::vector<std::vector<Int>> rows;
        for (std::size_t i = 0; i < t; ++i) {
            std::size_t lead = usable[i];
            std::uniform_int_distribution<unsigned> ad(1, pexp[lead]);
            unsigned alpha = ad(rng);
            Int d = 1;
            for (unsigned e = 0; e < alpha; ++e) d *= sys.p;
            std::vector<Int> a(m);
            a[lead] = sys.h[lead] / d;
            // noise: any multiple of h_j / gcd(d, h_j) keeps d * chi = 0
            for (std::size_t j = 0; j < m; ++j) {
                if (j == lead || sys.h[j] == 1) continue;
                bool used_as_lead = false;
                for (std::size_t i2 = 0; i2 <= i; ++i2)
                    if (usable[i2] == j) used_as_lead = true;
                if (used_as_lead) continue;
                Int step = sys.h[j] / cover::gcd(d, sys.h[j]);
                std::uniform_int_distribution<std::int64_t> nd(
                    0, static_cast<std::int64_t>(sys.h[j] / step) - 1);
                a[j] = step * nd(rng);
            }
            sys.d.push_back(d);
            rows.push_back(std::move(a));
        }
        sys.a = cover::IntMatrix::from_rows(rows);

        std::uniform_int_distribution<std::int64_t> xd(-20, 20);
        for (std::size_t i = 0; i < t; ++i) sys.x.push_back(xd(rng));

        // The construction can still produce an order drop (noise joining
        // the leading term); keep only systems whose declared data is
        // exact and independent.
        try {
            cover::validate_lemma_system(sys);
        } catch (const cover::InvalidHypotheses&) {
            continue;
        }
        bool orders_exact = true;
        for (std::size_t i = 0; i < t; ++i) {
            Int actual = 1;
            for (std::size_t j = 0; j < m; ++j) {
                if (sys.a(i, j) == 0) continue;
                actual = cover::lcm(actual, sys.h[j] / cover::gcd(sys.a(i, j), sys.h[j]));
            }
            if (actual != sys.d[i]) orders_exact = false;
        }
        if (!orders_exact) continue;
        return sys;
    }
}

RandomModel random_picard_model(std::mt19937_64& rng, std::int64_t max_group_order,
                                std::size_t max_branches, std::int64_t max_torsion,
                                std::size_t max_free) {
    for (;;) {
        cover::BuildingData bd0 = random_building_data(rng, max_group_order, max_branches);

        // Random ambient A.
        std::uniform_int_distribution<std::size_t> fd(0, max_free);
        std::uniform_int_distribution<int> td(0, 2);
        std::vector<Int> inv;
        int torsion_gens = td(rng);
        Int torsion = 1;
        std::uniform_int_distribution<int> dd(2, 8);
        for (int i = 0; i < torsion_gens; ++i) inv.push_back(dd(rng));
        std::sort(inv.begin(), inv.end());
        // force divisibility chain
        for (std::size_t i = 1; i < inv.size(); ++i)
            if (inv[i] % inv[i - 1] != 0) inv[i] = inv[i] * inv[i - 1] / cover::gcd(inv[i], inv[i - 1]);
        torsion = 1;
        for (const Int& d : inv) torsion *= d;
        if (torsion > max_torsion) continue;
        std::size_t free_rank = fd(rng);
        if (inv.empty() && free_rank == 0) free_rank = 1;
        cover::FgAbGroup A = cover::make_group(inv, free_rank);

        // Random branch classes, then solve for the eigensheaf classes.
        std::vector<cover::GroupElement> D;
        for (std::size_t j = 0; j < bd0.branch_count(); ++j) D.push_back(random_element(rng, A));
        std::vector<cover::GroupElement> L;
        bool ok = true;
        for (std::size_t i = 0; i < bd0.chi.size(); ++i) {
            const Int& d = bd0.chi_order[i];
            std::vector<Int> comps = cover::character_components(bd0, bd0.chi[i]);
            cover::GroupElement rhs = cover::zero_element(A);
            for (std::size_t j = 0; j < bd0.branch_count(); ++j) {
                Int numer = d * comps[j];
                if (numer % bd0.m[j] != 0) {
                    ok = false;
                    break;
                }
                rhs = rhs + D[j] * (numer / bd0.m[j]);
            }
            if (!ok) break;
            auto sol = cover::solve_mixed_congruences(cover::scaling_hom(A, d).matrix, rhs.coords,
                                                      A.moduli());
            if (!sol) {
                ok = false;
                break;
            }
            L.emplace_back(A, *sol);
        }
        if (!ok) continue;

        cover::PicardModel pic{A, D, L};
        // Shrink A to the subgroup generated by the classes so the model
        // invariant holds.
        {
            std::vector<std::vector<Int>> cols;
            for (const auto& e : pic.D) cols.push_back(e.coords);
            for (const auto& e : pic.Lgen) cols.push_back(e.coords);
            cover::IntMatrix gm = cols.empty() ? cover::IntMatrix(A.dim(), 0)
                                               : cover::IntMatrix::from_columns(cols);
            cover::SubgroupInfo sub = cover::subgroup_from_generators(A.moduli(), gm);
            if (sub.group != A) {
                cover::PicardModel shrunk;
                shrunk.A = sub.group;
                bool conv = true;
                auto convert = [&](const cover::GroupElement& e) {
                    auto c = cover::subgroup_coords(sub, A.moduli(), e.coords);
                    if (!c) conv = false;
                    return cover::GroupElement(sub.group, c ? *c : std::vector<Int>(sub.group.dim()));
                };
                for (const auto& e : pic.D) shrunk.D.push_back(convert(e));
                for (const auto& e : pic.Lgen) shrunk.Lgen.push_back(convert(e));
                if (!conv) continue;
                pic = std::move(shrunk);
            }
        }

        auto [bd, picr] = cover::refine_prime_power(bd0, pic);
        if (!cover::validate_building_data(bd).ok()) continue;
        if (!cover::validate_picard_model(bd, picr).ok()) continue;
        if (!cover::check_characteristic_relations(bd, picr).ok()) continue;
        return RandomModel{std::move(bd), std::move(picr)};
    }
}

}  // namespace testsupport
