#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "k3corr/lattice.hpp"
#include "k3corr/numeric.hpp"

namespace k3corr {

// The type (r, s, d) of a primitive isotropic Mukai vector: H^2 = 2rs and
// H = d Htilde with Htilde primitive.  Derives c = (r, s), a = r/c, b = s/c,
// d_a = (d, a), d_b = (d, b), a_1 = a/d_a^2, b_1 = b/d_b^2; construction
// validates (c, d) = 1, d = d_a d_b, d_a^2 | a and d_b^2 | b.
class MukaiType {
  public:
    MukaiType(Int r, Int s, Int d);

    const Int& r() const { return r_; }
    const Int& s() const { return s_; }
    const Int& d() const { return d_; }
    const Int& c() const { return c_; }
    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& d_a() const { return d_a_; }
    const Int& d_b() const { return d_b_; }
    const Int& a1() const { return a1_; }
    const Int& b1() const { return b1_; }
    Int h_tilde_square() const { return 2 * a1_ * b1_ * c_ * c_; }

  private:
    Int r_, s_, d_;
    Int c_, a_, b_, d_a_, d_b_, a1_, b1_;
};

struct InvariantReport {
    Int r, s, d, gamma;
    Int c, a, b, d_a, d_b, a1, b1;
    Int gamma_a, gamma_b, gamma2;
    Int n_v;
    Int h_tilde_square;
};

// All derived invariants of a type together with gamma; requires s >= 1 and
// gamma | 2 a_1 b_1 c^2 = Htilde^2.
InvariantReport invariants(const MukaiType& t, const Int& gamma);

// The residue m mod 2ab with m = -1 mod 2a and m = 1 mod 2b, for coprime
// a, b >= 1; returned in [0, 2ab).
Int mukai_element(const Int& a, const Int& b);

// A Mukai vector (r, l, s) with r >= 1 and l^2 = 2rs.  The checked
// constructor also requires primitivity gcd(r, content(l), s) = 1; the
// tagged one admits non-primitive isotropic vectors.
class MukaiVector {
  public:
    struct general_t {};
    static constexpr general_t general{};

    MukaiVector(Int r, LatticeVector l, Int s);
    MukaiVector(general_t, Int r, LatticeVector l, Int s);

    const Int& r() const { return r_; }
    const LatticeVector& l() const { return l_; }
    const Int& s() const { return s_; }
    Int component_gcd() const { return igcd(r_, l_.content(), s_); }
    bool is_primitive() const { return component_gcd() == 1; }

    bool operator==(const MukaiVector& o) const {
        return r_ == o.r_ && l_ == o.l_ && s_ == o.s_;
    }

  private:
    Int r_;
    LatticeVector l_;
    Int s_;
};

/* Universal isomorphism moves.  Vector payloads are stored as raw
 * coordinates in the ambient basis of the vector being transformed. */
struct TensorByD {
    std::vector<Int> d_coords;
};
struct Reflection {};
struct Nu {
    Int d1, d2;
};
struct NuInverse {
    Int d1, d2;
};
struct Tyurin {
    int sign;  // +1 or -1: the branch of M_X(+-l^2/2, l, +-1)
    std::vector<Int> mirror_coords;
};
using Move = std::variant<TensorByD, Reflection, Nu, NuInverse, Tyurin>;

struct IsomorphismChain {
    std::vector<Move> moves;
    bool empty() const { return moves.empty(); }
};

// Applies one non-terminal move, checking its legality against v:
// Nu(d1, d2) needs (d1, d2) = (d1, s) = (r, d2) = 1, NuInverse exact
// divisions, Reflection r, s > 0.  Tyurin is terminal and rejected here.
MukaiVector apply_move(const MukaiVector& v, const Move& move);

struct ReplayResult {
    MukaiVector final_vector;
    bool reached_surface;  // chain ended with a valid Tyurin move
};

// Replays a chain from start, validating every move's legality at its
// position.  A Tyurin move must come last and must apply to the current
// vector, i.e. the vector must be (sign * mirror^2 / 2, mirror, sign).
ReplayResult replay(const IsomorphismChain& chain, const MukaiVector& start);

struct Rank1Reduction {
    MukaiVector reduced;
    IsomorphismChain chain;
};

// Over a rank-1 ambient Z Htilde with Htilde^2 > 0: normalizes by the
// smallest tensor move making l a positive multiple of Htilde, then strips
// d by nu(d_a, d_b)^{-1} and orders r <= s by the reflection.  The result
// is (a_1 c, Htilde, b_1 c) up to the reflection.
Rank1Reduction reduce_rank1(const MukaiVector& v);

// 0 < r <= s with l = +Htilde.
bool is_reduced_rank1(const MukaiVector& v);

// Theorem criterion at Picard number one: reduced vectors give isomorphic
// moduli iff they are equal.
bool rank1_moduli_equal(const MukaiVector& v1, const MukaiVector& v2);

// Cyclic-quotient bookkeeping for the periods of Y = M_X(r, H, s) over a
// rank-1 Picard lattice: N(Y) = Z h with h^2 = 2ab, T(Y)*/T(Y) = Z/2ab,
// t*(h) = m(a, b) c t*(H), and [T(Y) : T(X)] = c.
struct PeriodData {
    Int h_square;
    Int group_order;
    Int t_star;
    Int index_over_base;
};
PeriodData period_transform(const Int& r, const Int& s);

// Inverse of the Mukai element: splits ab into the prime powers where
// m_tilde = -1 mod 2p^alpha (the a part) and +1 (the b part); returns
// (a, b) with a <= b.  m_tilde may also be the negated residue.
std::pair<Int, Int> recover_ab(const Int& ab, const Int& m_tilde);

}  // namespace k3corr
