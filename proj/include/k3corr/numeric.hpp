#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace k3corr {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// gcd of absolute values; igcd(0, 0) = 0.
Int igcd(const Int& a, const Int& b);
Int igcd(const Int& a, const Int& b, const Int& c);

// Representative of a mod m in [0, m); requires m > 0.
Int mod_pos(const Int& a, const Int& m);

// Canonical representative of r mod 2 in [0, 2), reduced.
Rat mod_two(const Rat& r);

// Canonical representative of r mod 1 in [0, 1), reduced.
Rat mod_one(const Rat& r);

// Quotient a / b when b divides a exactly; throws internal_error otherwise.
Int exact_div(const Int& a, const Int& b);

// Floor of sqrt(n); requires n >= 0.
Int isqrt(const Int& n);

bool is_perfect_square(const Int& n, Int* root = nullptr);

// g = gcd(a, b) >= 0 together with x, y such that a*x + b*y = g.
struct ExtGcd {
    Int g, x, y;
};
ExtGcd ext_gcd(const Int& a, const Int& b);

// Inverse of a mod m; requires m > 0 and gcd(a, m) = 1 (not_coprime otherwise).
Int mod_inverse(const Int& a, const Int& m);

// Legendre symbol for odd prime p.  For p = 2 the 2-adic square
// convention: +1 iff a = 1 mod 8, 0 if a even, -1 otherwise.
int legendre(const Int& a, const Int& p);

// Prime factorization by trial division, ascending primes; requires n >= 1.
struct PrimePower {
    Int p;
    unsigned exponent;
};
std::vector<PrimePower> factorize(const Int& n);

// Decimal string (optional sign) to Int; throws invalid_input on garbage.
Int parse_int(const std::string& s);

// "p/q" with q > 0, or plain "p" when q = 1.
std::string rat_to_string(const Rat& r);

}  // namespace k3corr
