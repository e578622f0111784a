#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace cover {

// Exact arbitrary-precision integer used for every coefficient in the
// toolkit. No fixed-width fast path: correctness over speed at the
// problem sizes this library targets.
using Int = boost::multiprecision::cpp_int;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

/// Least non-negative residue of a modulo m (m > 0).
inline Int pos_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Floor division (rounds toward negative infinity).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Extended gcd: returns g = gcd(a,b) and sets x,y with a*x + b*y = g.
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y);

/// Inverse of a modulo m (gcd(a,m) must be 1).
Int mod_inverse(const Int& a, const Int& m);

/// Trial-division primality test; intended for the small moduli that
/// appear in congruence systems.
bool is_prime(const Int& n);

/// p-adic valuation of n (n != 0, p >= 2).
unsigned p_valuation(Int n, const Int& p);

/// Factorization into (prime, exponent) pairs, ascending primes.
std::vector<std::pair<Int, unsigned>> factorize(Int n);

std::string to_string(const Int& v);

}  // namespace cover
