#include "k3corr/numeric.hpp"

#include <utility>
#include <vector>

#include "k3corr/errors.hpp"

namespace k3corr {

Int igcd(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(abs(a), abs(b));
}

Int igcd(const Int& a, const Int& b, const Int& c) {
    return igcd(igcd(a, b), c);
}

Int mod_pos(const Int& a, const Int& m) {
    if (m <= 0) throw internal_error("mod_pos: modulus must be positive");
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

Rat mod_two(const Rat& r) {
    const Int num = numerator(r);
    const Int den = denominator(r);  // den > 0, reduced
    return Rat(mod_pos(num, 2 * den), den);
}

Rat mod_one(const Rat& r) {
    const Int num = numerator(r);
    const Int den = denominator(r);
    return Rat(mod_pos(num, den), den);
}

Int exact_div(const Int& a, const Int& b) {
    if (b == 0 || a % b != 0) throw internal_error("exact_div: not divisible");
    return a / b;
}

Int isqrt(const Int& n) {
    if (n < 0) throw internal_error("isqrt: negative argument");
    return sqrt(n);  // floor square root for cpp_int
}

bool is_perfect_square(const Int& n, Int* root) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

ExtGcd ext_gcd(const Int& a, const Int& b) {
    // Invariant: old_r = a*old_s + b*old_t, r = a*s + b*t.
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
        old_t -= q * t;
        std::swap(old_t, t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return ExtGcd{old_r, old_s, old_t};
}

Int mod_inverse(const Int& a, const Int& m) {
    if (m <= 0) throw internal_error("mod_inverse: modulus must be positive");
    ExtGcd e = ext_gcd(mod_pos(a, m), m);
    if (e.g != 1) throw not_coprime("mod_inverse: arguments not coprime");
    return mod_pos(e.x, m);
}

int legendre(const Int& a, const Int& p) {
    if (p == 2) {
        if (a % 2 == 0) return 0;
        return mod_pos(a, 8) == 1 ? 1 : -1;
    }
    if (p < 2) throw invalid_input("legendre: p must be prime or 2");
    Int r = boost::multiprecision::powm(mod_pos(a, p), (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

std::vector<PrimePower> factorize(const Int& n) {
    if (n < 1) throw invalid_input("factorize: argument must be positive");
    std::vector<PrimePower> out;
    Int m = n;
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) out.push_back(PrimePower{p, e});
    };
    strip(2);
    strip(3);
    for (Int p = 5; p * p <= m; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (m > 1) out.push_back(PrimePower{m, 1});
    return out;
}

Int parse_int(const std::string& s) {
    if (s.empty()) throw invalid_input("empty integer literal");
    std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (start == s.size()) throw invalid_input("bad integer literal: " + s);
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw invalid_input("bad integer literal: " + s);
    return Int(s);
}

std::string rat_to_string(const Rat& r) {
    const Int num = numerator(r);
    const Int den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace k3corr
