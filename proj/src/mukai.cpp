#include "k3corr/mukai.hpp"

#include <algorithm>

#include "k3corr/errors.hpp"

namespace k3corr {

MukaiType::MukaiType(Int r, Int s, Int d)
    : r_(std::move(r)), s_(std::move(s)), d_(std::move(d)) {
    if (r_ < 1) throw invalid_type("type needs r >= 1");
    if (d_ < 1) throw invalid_type("type needs d >= 1");
    c_ = igcd(r_, s_);
    if (c_ == 0) throw invalid_type("type needs (r, s) != (0, 0)");
    a_ = r_ / c_;
    b_ = s_ / c_;
    if (igcd(c_, d_) != 1) throw invalid_type("type needs gcd(c, d) = 1");
    d_a_ = igcd(d_, a_);
    d_b_ = igcd(d_, b_);
    if (d_a_ * d_b_ != d_)
        throw invalid_type("type needs d = (d, a)(d, b), i.e. d^2 | ab");
    if (a_ % (d_a_ * d_a_) != 0 || b_ % (d_b_ * d_b_) != 0)
        throw invalid_type("type needs (d, a)^2 | a and (d, b)^2 | b");
    a1_ = a_ / (d_a_ * d_a_);
    b1_ = b_ / (d_b_ * d_b_);
}

InvariantReport invariants(const MukaiType& t, const Int& gamma) {
    if (t.s() < 1) throw invalid_input("invariants need s >= 1");
    if (gamma < 1) throw invalid_gamma("gamma must be positive");
    const Int h2 = t.h_tilde_square();
    if (h2 % gamma != 0)
        throw invalid_gamma("gamma must divide Htilde^2 = 2 a_1 b_1 c^2");

    InvariantReport rep;
    rep.r = t.r();
    rep.s = t.s();
    rep.d = t.d();
    rep.gamma = gamma;
    rep.c = t.c();
    rep.a = t.a();
    rep.b = t.b();
    rep.d_a = t.d_a();
    rep.d_b = t.d_b();
    rep.a1 = t.a1();
    rep.b1 = t.b1();
    rep.gamma_a = igcd(gamma, t.a1());
    rep.gamma_b = igcd(gamma, t.b1());
    rep.gamma2 = exact_div(gamma, rep.gamma_a * rep.gamma_b);
    rep.n_v = igcd(t.r(), t.s(), t.d() * gamma);
    rep.h_tilde_square = h2;
    if (rep.n_v != igcd(t.r(), t.s(), gamma))
        throw internal_error("n(v) = (r, s, d gamma) differs from (r, s, gamma)");
    if (igcd(gamma, t.c()) == 1 && rep.gamma2 != 1 && rep.gamma2 != 2)
        throw internal_error("gamma_2 | 2 fails with (gamma, c) = 1");
    return rep;
}

Int mukai_element(const Int& a, const Int& b) {
    if (a < 1 || b < 1) throw invalid_input("Mukai element needs a, b >= 1");
    if (igcd(a, b) != 1) throw not_coprime("Mukai element needs (a, b) = 1");
    // m = -1 + 2ak with ak = 1 mod b glues -1 mod 2a to +1 mod 2b.
    const Int k = mod_inverse(a, b);
    return mod_pos(-1 + 2 * a * k, 2 * a * b);
}

MukaiVector::MukaiVector(Int r, LatticeVector l, Int s)
    : MukaiVector(general, std::move(r), std::move(l), std::move(s)) {
    if (!is_primitive())
        throw invalid_input("Mukai vector must be primitive");
}

MukaiVector::MukaiVector(general_t, Int r, LatticeVector l, Int s)
    : r_(std::move(r)), l_(std::move(l)), s_(std::move(s)) {
    if (r_ < 1) throw invalid_input("Mukai vector needs r >= 1");
    if (l_.squared() != 2 * r_ * s_)
        throw invalid_input("Mukai vector must be isotropic: l^2 = 2rs");
}

namespace {

struct MoveApplier {
    const MukaiVector& v;

    MukaiVector operator()(const TensorByD& m) const {
        LatticeVector d(v.l().ambient(), m.d_coords);
        const Int rd2 = v.r() * d.squared();
        if (rd2 % 2 != 0)
            throw illegal_move("tensor move needs r D^2 even");
        const Int s = v.s() + rd2 / 2 + d.dot(v.l());
        return MukaiVector(MukaiVector::general, v.r(),
                           v.l() + d.scaled(v.r()), s);
    }

    MukaiVector operator()(const Reflection&) const {
        if (v.s() <= 0)
            throw illegal_move("reflection needs r, s > 0");
        return MukaiVector(MukaiVector::general, v.s(), v.l(), v.r());
    }

    MukaiVector operator()(const Nu& m) const {
        if (m.d1 < 1 || m.d2 < 1) throw illegal_move("nu needs d1, d2 >= 1");
        if (igcd(m.d1, m.d2) != 1) throw illegal_move("nu needs (d1, d2) = 1");
        if (igcd(m.d1, v.s()) != 1) throw illegal_move("nu needs (d1, s) = 1");
        if (igcd(v.r(), m.d2) != 1) throw illegal_move("nu needs (r, d2) = 1");
        return MukaiVector(MukaiVector::general, v.r() * m.d1 * m.d1,
                           v.l().scaled(m.d1 * m.d2), v.s() * m.d2 * m.d2);
    }

    MukaiVector operator()(const NuInverse& m) const {
        if (m.d1 < 1 || m.d2 < 1)
            throw illegal_move("nu inverse needs d1, d2 >= 1");
        if (v.r() % (m.d1 * m.d1) != 0 || v.s() % (m.d2 * m.d2) != 0 ||
            v.l().content() % (m.d1 * m.d2) != 0)
            throw illegal_move("nu inverse needs exact division of (r, l, s)");
        const Int r = v.r() / (m.d1 * m.d1);
        const Int s = v.s() / (m.d2 * m.d2);
        if (igcd(m.d1, m.d2) != 1)
            throw illegal_move("nu inverse needs (d1, d2) = 1");
        if (igcd(m.d1, s) != 1)
            throw illegal_move("nu inverse needs (d1, s/d2^2) = 1");
        if (igcd(r, m.d2) != 1)
            throw illegal_move("nu inverse needs (r/d1^2, d2) = 1");
        std::vector<Int> coords(v.l().coords());
        for (Int& x : coords) x = exact_div(x, m.d1 * m.d2);
        return MukaiVector(MukaiVector::general, r,
                           LatticeVector(v.l().ambient(), std::move(coords)), s);
    }

    MukaiVector operator()(const Tyurin&) const {
        throw illegal_move("Tyurin move is terminal; use replay");
    }
};

}  // namespace

MukaiVector apply_move(const MukaiVector& v, const Move& move) {
    return std::visit(MoveApplier{v}, move);
}

ReplayResult replay(const IsomorphismChain& chain, const MukaiVector& start) {
    MukaiVector cur = start;
    for (std::size_t i = 0; i < chain.moves.size(); ++i) {
        const Move& move = chain.moves[i];
        if (const Tyurin* tyu = std::get_if<Tyurin>(&move)) {
            if (i + 1 != chain.moves.size())
                throw illegal_move("Tyurin move must be the last of a chain");
            if (tyu->sign != 1 && tyu->sign != -1)
                throw illegal_move("Tyurin sign must be +1 or -1");
            LatticeVector mirror(cur.l().ambient(), tyu->mirror_coords);
            const Int m2 = mirror.squared();
            if (tyu->sign * m2 <= 0)
                throw illegal_move("Tyurin needs +-mirror^2 > 0");
            if (cur.r() * 2 != tyu->sign * m2 || !(cur.l() == mirror) ||
                cur.s() != tyu->sign)
                throw illegal_move(
                    "Tyurin applies only to (+-l^2/2, l, +-1) vectors");
            return ReplayResult{std::move(cur), true};
        }
        cur = apply_move(cur, move);
    }
    return ReplayResult{std::move(cur), false};
}

Rank1Reduction reduce_rank1(const MukaiVector& v) {
    const GramLattice& ambient = v.l().ambient();
    if (ambient.rank() != 1)
        throw not_rank_one("rank-1 reduction needs a rank-1 Picard lattice");
    if (!v.is_primitive())
        throw invalid_input("rank-1 reduction needs a primitive Mukai vector");
    const Int h2 = ambient.gram()(0, 0);
    if (h2 <= 0 || h2 % 2 != 0)
        throw invalid_input("rank-1 reduction needs Z Htilde with even Htilde^2 > 0");

    IsomorphismChain chain;
    MukaiVector cur = v;

    // l = d Htilde with d <= 0: tensor with k Htilde, the least k giving
    // d + rk >= 1 (s > 0 then follows from isotropy).
    const Int d0 = cur.l()[0];
    if (d0 < 1) {
        const Int k = (1 - d0 + cur.r() - 1) / cur.r();
        Move m = TensorByD{{k}};
        cur = apply_move(cur, m);
        chain.moves.push_back(std::move(m));
    }

    const Int c = igcd(cur.r(), cur.s());
    const Int d = cur.l()[0];
    const Int d_a = igcd(d, cur.r() / c);
    const Int d_b = igcd(d, cur.s() / c);
    if (d_a * d_b != d)
        throw internal_error("rank-1 reduction: d does not split as d_a d_b");
    if (d_a != 1 || d_b != 1) {
        Move m = NuInverse{d_a, d_b};
        cur = apply_move(cur, m);
        chain.moves.push_back(std::move(m));
    }
    if (cur.r() > cur.s()) {
        Move m = Reflection{};
        cur = apply_move(cur, m);
        chain.moves.push_back(std::move(m));
    }
    return Rank1Reduction{std::move(cur), std::move(chain)};
}

bool is_reduced_rank1(const MukaiVector& v) {
    if (v.l().ambient().rank() != 1) return false;
    return v.l()[0] == 1 && v.r() >= 1 && v.r() <= v.s();
}

bool rank1_moduli_equal(const MukaiVector& v1, const MukaiVector& v2) {
    if (!is_reduced_rank1(v1) || !is_reduced_rank1(v2))
        throw not_reduced("rank-1 comparison needs reduced Mukai vectors");
    return v1.r() == v2.r() && v1.s() == v2.s();
}

PeriodData period_transform(const Int& r, const Int& s) {
    if (r < 1 || s < 1) throw invalid_input("period transform needs r, s >= 1");
    const Int c = igcd(r, s);
    const Int a = r / c;
    const Int b = s / c;
    const Int order = 2 * a * b;
    return PeriodData{order, order, mod_pos(mukai_element(a, b) * c, order), c};
}

std::pair<Int, Int> recover_ab(const Int& ab, const Int& m_tilde) {
    if (ab < 1) throw invalid_input("recover_ab needs ab >= 1");
    if (mod_pos(m_tilde, 2) != 1)
        throw not_plus_minus_one("the residue must be odd");
    Int a = 1;
    for (const PrimePower& pp : factorize(ab)) {
        Int q = 1;
        for (unsigned i = 0; i < pp.exponent; ++i) q *= pp.p;
        const Int res = mod_pos(m_tilde, 2 * q);
        if (res == 2 * q - 1)
            a *= q;
        else if (res != 1)
            throw not_plus_minus_one(
                "residue is neither +1 nor -1 mod 2 p^alpha for p^alpha || ab");
    }
    Int b = exact_div(ab, a);
    if (a > b) std::swap(a, b);
    return {a, b};
}

}  // namespace k3corr
