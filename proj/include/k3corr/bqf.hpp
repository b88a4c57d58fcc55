#pragma once

#include <optional>
#include <vector>

#include "k3corr/numeric.hpp"

namespace k3corr {

// Integral binary quadratic form a x^2 + b xy + c y^2 with cached
// discriminant b^2 - 4ac (always 0 or 1 mod 4).
class Bqf {
  public:
    Bqf(Int a, Int b, Int c);

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& disc() const { return disc_; }

    Int eval(const Int& x, const Int& y) const;
    Int content() const { return igcd(igcd(a_, b_), c_); }

    bool is_definite() const { return disc_ < 0 && a_ != 0; }
    bool is_indefinite_nonsquare() const;
    // 0 < b < sqrt(disc) and sqrt(disc) - b < 2|a| < sqrt(disc) + b.
    bool is_reduced_indefinite() const;

    bool operator==(const Bqf& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
    }

  private:
    Int a_, b_, c_, disc_;
};

struct Mat2 {
    Int m00, m01, m10, m11;
    static Mat2 identity() { return {1, 0, 0, 1}; }
    Mat2 operator*(const Mat2& o) const;
    Int det() const { return m00 * m11 - m01 * m10; }
};

// f composed with the substitution (x, y) -> M (x, y).
Bqf transformed(const Bqf& f, const Mat2& m);

struct Representation {
    Int x, y, value;
};

// The full cycle of reduced forms equivalent to f (disc > 0, non-square),
// each with the accumulated unimodular transform from f.  If f is already
// reduced, the first entry is f itself with the identity transform.
struct CycleEntry {
    Bqf form;
    Mat2 transform;
};
std::vector<CycleEntry> reduction_cycle(const Bqf& f);

// Complete, certified decision for n in {+1, -1}: a witness iff the
// equation f(x, y) = n has an integral solution.  Dispatch: definite forms
// by bounded enumeration; square discriminant by factoring into two integer
// linear forms; disc = 0 as content times the square of a linear form;
// indefinite non-square discriminant by the reduction cycle (|n| = 1 is
// below sqrt(disc)/2 for every admissible disc >= 5, so n is represented
// iff it appears as a leading coefficient in the cycle).
std::optional<Representation> represents(const Bqf& f, int n);

// Independent brute-force oracle: exhaustive scan of |x|, |y| <= bound.
// Found is a certified witness; NotFoundUpTo is not a certificate.
struct OracleResult {
    std::optional<Representation> witness;
    Int searched_bound;
    bool found() const { return witness.has_value(); }
};
OracleResult represents_value(const Bqf& f, const Int& n, const Int& bound);

}  // namespace k3corr
