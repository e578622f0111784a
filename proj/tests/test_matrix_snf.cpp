#include "support.hpp"

#include <doctest.h>

using namespace cover;
using testsupport::brute_quotient_invariants;
using testsupport::minor_gcd;

namespace {

void check_snf_contract(const IntMatrix& m, const SnfResult& s) {
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(s.U.determinant()) == 1);
    CHECK(abs(s.V.determinant()) == 1);
    for (std::size_t i = 0; i + 1 < std::min(s.D.rows(), s.D.cols()); ++i) {
        if (s.D(i + 1, i + 1) != 0) {
            REQUIRE(s.D(i, i) != 0);
            CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
        }
    }
    for (std::size_t i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i) CHECK(s.D(i, i) >= 0);
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j) CHECK(s.D(i, j) == 0);
}

}  // namespace

TEST_CASE("snf: 2x2 identity") {
    IntMatrix m = IntMatrix::identity(2);
    SnfResult s = snf(m);
    CHECK(s.U == IntMatrix::identity(2));
    CHECK(s.V == IntMatrix::identity(2));
    CHECK(s.D == IntMatrix::identity(2));
}

TEST_CASE("snf: [[2,4],[6,8]] has diagonal (2,4) by the minor-gcd chain") {
    IntMatrix m = IntMatrix::from_rows({{2, 4}, {6, 8}});
    // Oracle: gcd of 1x1 minors, then of 2x2 minors.
    Int g1 = minor_gcd(m, 1);
    Int g2 = minor_gcd(m, 2);
    REQUIRE(g1 == 2);
    REQUIRE(g2 == 8);
    SnfResult s = snf(m);
    check_snf_contract(m, s);
    CHECK(s.D(0, 0) == g1);
    CHECK(s.D(1, 1) == g2 / g1);
    CHECK(s.D(0, 0) == 2);
    CHECK(s.D(1, 1) == 4);
}

TEST_CASE("snf: relation rows of the quotient (Z/4)^3 / <(2,2,2)>") {
    IntMatrix m = IntMatrix::from_rows({{4, 0, 0}, {0, 4, 0}, {0, 0, 4}, {2, 2, 2}});
    // Oracle: Z^3 / rowspace contains 4Z^3, so enumerate (Z/4)^3 modulo
    // the closure of the reduced rows.
    auto inv = brute_quotient_invariants({4, 4, 4}, {{0, 0, 0}, {2, 2, 2}});
    REQUIRE(inv == std::vector<std::int64_t>{2, 4, 4});
    SnfResult s = snf(m);
    check_snf_contract(m, s);
    std::vector<Int> diag;
    for (std::size_t i = 0; i < 3; ++i) diag.push_back(s.D(i, i));
    CHECK(diag == std::vector<Int>{2, 4, 4});
    CHECK(s.rank == 3);  // the fourth row of D is zero
    CanonicalizeResult c = canonicalize(m, 3);
    CHECK(c.group.invariants == std::vector<Int>{2, 4, 4});
    CHECK(c.group.free_rank == 0);
}

TEST_CASE("snf: random matrices satisfy the full contract") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_int_distribution<int> entry(-50, 50);
    for (int iter = 0; iter < 60; ++iter) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
        SnfResult s = snf(m);
        check_snf_contract(m, s);
        // Minor-gcd cross-check for small sizes.
        if (m.rows() <= 5 && m.cols() <= 5) {
            Int prev = 1;
            for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
                Int gi = minor_gcd(m, i + 1);
                if (gi == 0) {
                    CHECK(s.D(i, i) == 0);
                    break;
                }
                CHECK(s.D(i, i) == gi / prev);
                prev = gi;
            }
        }
    }
}

TEST_CASE("kernel_lattice: columns span the kernel") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int iter = 0; iter < 40; ++iter) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
        IntMatrix ker = kernel_lattice(m);
        CHECK((m * ker).is_zero());
        CHECK(ker.cols() == m.cols() - snf(m).rank);
    }
}

TEST_CASE("solve_linear: single congruence") {
    auto s = solve_mixed_congruences(IntMatrix::from_rows({{1}}), {Int(1)}, {Int(2)});
    REQUIRE(s.has_value());
    CHECK(pos_mod((*s)[0], 2) == 1);
}

TEST_CASE("solve_linear: mixed system with brute-force confirmation") {
    // 2 s1 + s2 = 1 mod 4; s1 = 0 mod 2.
    IntMatrix a = IntMatrix::from_rows({{2, 1}, {1, 0}});
    std::vector<Int> b{1, 0};
    std::vector<Int> moduli{4, 2};
    auto s = solve_mixed_congruences(a, b, moduli);
    REQUIRE(s.has_value());
    CHECK(pos_mod(2 * (*s)[0] + (*s)[1] - 1, 4) == 0);
    CHECK(pos_mod((*s)[0], 2) == 0);
    // The witness (0, 1) found by exhausting (Z/4)^2 satisfies too.
    bool brute_found = false;
    for (int s1 = 0; s1 < 4; ++s1)
        for (int s2 = 0; s2 < 4; ++s2)
            if ((2 * s1 + s2) % 4 == 1 && s1 % 2 == 0) brute_found = true;
    CHECK(brute_found);
}

TEST_CASE("solve_linear: 2s = 1 mod 4 is certified unsolvable") {
    auto s = solve_mixed_congruences(IntMatrix::from_rows({{2}}), {Int(1)}, {Int(4)});
    CHECK(!s.has_value());
    bool brute_found = false;
    for (int v = 0; v < 4; ++v)
        if ((2 * v) % 4 == 1) brute_found = true;
    CHECK(!brute_found);
}

TEST_CASE("solve_linear: agreement with exhaustive search on random modular systems") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> rows_d(1, 3), cols_d(1, 3), entry(-5, 5), mod_d(1, 3);
    const std::int64_t mods[] = {2, 3, 4, 6};
    for (int iter = 0; iter < 150; ++iter) {
        std::size_t r = rows_d(rng), c = cols_d(rng);
        IntMatrix a(r, c);
        std::vector<Int> b(r), moduli(r);
        std::vector<std::int64_t> mod64(r);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j) a(i, j) = entry(rng);
            mod64[i] = mods[mod_d(rng)];
            moduli[i] = mod64[i];
            b[i] = entry(rng);
        }
        // Search space: solutions live in the product of lcm over columns.
        std::int64_t box = 1;
        for (std::size_t i = 0; i < r; ++i) box = std::lcm(box, mod64[i]);
        std::int64_t total = 1;
        bool skip = false;
        for (std::size_t j = 0; j < c; ++j) {
            total *= box;
            if (total > 100000) skip = true;
        }
        if (skip) continue;
        bool brute = false;
        std::vector<std::int64_t> x(c, 0);
        for (std::int64_t code = 0; code < total && !brute; ++code) {
            std::int64_t v = code;
            for (std::size_t j = 0; j < c; ++j) {
                x[j] = v % box;
                v /= box;
            }
            bool ok = true;
            for (std::size_t i = 0; i < r && ok; ++i) {
                std::int64_t acc = 0;
                for (std::size_t j = 0; j < c; ++j)
                    acc += static_cast<std::int64_t>(a(i, j)) * x[j];
                std::int64_t bb = static_cast<std::int64_t>(b[i]);
                if (((acc - bb) % mod64[i] + mod64[i]) % mod64[i] != 0) ok = false;
            }
            if (ok) brute = true;
        }
        auto sol = solve_mixed_congruences(a, b, moduli);
        CHECK(sol.has_value() == brute);
    }
}
