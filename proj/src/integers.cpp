#include "cover/integers.hpp"

#include <stdexcept>

namespace cover {

Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return abs(a);
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

Int mod_inverse(const Int& a, const Int& m) {
    Int x, y;
    Int g = ext_gcd(pos_mod(a, m), m, x, y);
    if (g != 1) throw std::invalid_argument("mod_inverse: arguments are not coprime");
    return pos_mod(x, m);
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (Int d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

unsigned p_valuation(Int n, const Int& p) {
    if (n == 0) throw std::invalid_argument("p_valuation: n must be nonzero");
    n = abs(n);
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::vector<std::pair<Int, unsigned>> factorize(Int n) {
    n = abs(n);
    if (n < 2) return {};
    std::vector<std::pair<Int, unsigned>> out;
    for (Int d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::string to_string(const Int& v) { return v.str(); }

}  // namespace cover
