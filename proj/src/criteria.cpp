#include "k3corr/criteria.hpp"

#include <exception>
#include <thread>
#include <tuple>
#include <utility>

#include "k3corr/errors.hpp"

namespace k3corr {

bool rank1_self_iso(const MukaiType& t) {
    return t.c() == 1 && (t.a1() == 1 || t.b1() == 1);
}

namespace {

bool side_ok(const Int& divisor_part, const Int& residue_base, int sign) {
    for (const PrimePower& pp : factorize(divisor_part))
        if (legendre(sign * residue_base, pp.p) != 1) return false;
    return true;
}

}  // namespace

NecessityReport necessary_condition(const MukaiType& t, const Int& gamma) {
    if (t.s() < 1) throw invalid_input("necessary condition needs s >= 1");
    if (gamma < 1) throw invalid_gamma("gamma must be positive");
    if ((2 * t.a1() * t.b1()) % gamma != 0)
        throw invalid_gamma("necessary condition needs gamma | 2 a_1 b_1");
    if (igcd(gamma, t.c()) != 1)
        throw invalid_gamma("necessary condition needs (gamma, c) = 1");

    NecessityReport rep;
    rep.gamma = gamma;
    rep.gamma_a = igcd(gamma, t.a1());
    rep.gamma_b = igcd(gamma, t.b1());
    const Int ac = t.a1() * t.c();
    const Int bc = t.b1() * t.c();
    rep.plus = NecessitySide{side_ok(rep.gamma_b, ac, +1),
                             side_ok(rep.gamma_a, bc, +1)};
    rep.minus = NecessitySide{side_ok(rep.gamma_b, ac, -1),
                              side_ok(rep.gamma_a, bc, -1)};
    rep.blocked = !rep.plus.a_side_ok && !rep.plus.b_side_ok &&
                  !rep.minus.a_side_ok && !rep.minus.b_side_ok;
    return rep;
}

Rank2Input::Rank2Input(MukaiType t, Int gamma, Int k, Int t_coeff)
    : t_(std::move(t)),
      gamma_(std::move(gamma)),
      k_(std::move(k)),
      t_coeff_(std::move(t_coeff)) {
    if (t_.s() < 1) throw invalid_input("rank-2 input needs s >= 1");
    if (gamma_ < 1) throw invalid_gamma("gamma must be positive");
    if (t_.h_tilde_square() % gamma_ != 0)
        throw invalid_gamma("gamma must divide Htilde^2 = 2 a_1 b_1 c^2");
    if (igcd(m(), k_) != 1)
        throw invalid_input(
            "k must be coprime to Htilde^2/gamma so that Htilde . N = gamma Z");
    if (det() == 0) throw invalid_input("rank-2 lattice must be non-degenerate");
}

Int Rank2Input::det() const {
    return 2 * t_.h_tilde_square() * t_coeff_ - gamma_ * gamma_ * k_ * k_;
}

IntMat Rank2Input::gram() const {
    IntMat g(2, 2);
    g(0, 0) = t_.h_tilde_square();
    g(0, 1) = g(1, 0) = gamma_ * k_;
    g(1, 1) = 2 * t_coeff_;
    return g;
}

namespace {

Bqf series_form(const Rank2Input& in, Series series) {
    const MukaiType& t = in.type();
    const Int ac = t.a1() * t.c();
    const Int bc = t.b1() * t.c();
    if (series == Series::a)
        return Bqf(ac, in.gamma() * in.k(), bc * in.t_coeff());
    return Bqf(bc, in.gamma() * in.k(), ac * in.t_coeff());
}

// Coefficient of D in h_1 = d2 Htilde + co D: b_1 c for the a-series,
// a_1 c for the b-series.
Int series_cofactor(const MukaiType& t, Series series) {
    return series == Series::a ? Int(t.b1() * t.c()) : Int(t.a1() * t.c());
}

IsomorphismChain build_chain(const Rank2Input& in, Series series,
                             const SeriesDecision& dec) {
    const MukaiType& t = in.type();
    IsomorphismChain chain;
    if (t.d_a() != 1 || t.d_b() != 1)
        chain.moves.push_back(NuInverse{t.d_a(), t.d_b()});
    if (dec.d2 == 0) {
        // Degenerate decomposition h_1 = y co D forces co = 1, so the
        // reduced vector (a_1 c, Htilde, b_1 c) already has a unit entry
        // and Tyurin's isomorphism applies to Htilde directly.
        if (series == Series::b) chain.moves.push_back(Reflection{});
        chain.moves.push_back(Tyurin{+1, {1, 0}});
        return chain;
    }
    if (series == Series::a) chain.moves.push_back(Reflection{});
    if (dec.d2 != 1) chain.moves.push_back(Nu{1, dec.d2});
    if (dec.d_used[1] != 0) chain.moves.push_back(TensorByD{dec.d_used});
    chain.moves.push_back(Tyurin{dec.sign, dec.h_tilde_1});
    return chain;
}

SeriesDecision decide_with_witness(const Rank2Input& in, Series series,
                                   int sign, const Representation& found,
                                   const GramLattice& n_lat, const Int& n_v) {
    const MukaiType& t = in.type();
    const Int co = series_cofactor(t, series);

    SeriesDecision dec;
    dec.isomorphic = true;
    dec.series = series;
    dec.sign = sign;
    dec.n_v = n_v;
    dec.det = in.det();
    dec.delta = in.delta();

    Int x = found.x, y = found.y;
    // Normalize h_1 so that the Htilde coefficient d2 is non-negative.
    if (x < 0 || (x == 0 && y < 0)) {
        x = -x;
        y = -y;
    }
    dec.witness = Representation{x, y, found.value};
    dec.h_tilde_1 = {x, y * co};
    dec.d2 = x;
    dec.d_used = {0, y};

    const LatticeVector h1(n_lat, dec.h_tilde_1);
    const LatticeVector h_tilde(n_lat, {1, 0});
    dec.h_tilde_1_square = h1.squared();
    if (dec.h_tilde_1_square != sign * 2 * co)
        throw witness_verification_failed("h_1^2 != +-2 b_1 c (resp. a_1 c)");

    const Int gamma_co =
        series == Series::a ? igcd(in.gamma(), t.b1()) : igcd(in.gamma(), t.a1());
    const Int raw = series == Series::a ? t.b1() : t.a1();
    dec.h_dot = h_tilde.dot(h1);
    dec.h_modulus = in.gamma() * exact_div(raw, gamma_co) * t.c();
    if (mod_pos(dec.h_dot, abs(dec.h_modulus)) != 0)
        throw witness_verification_failed("Htilde . h_1 divisibility fails");

    const LatticeVector f = orthogonal_complement_rank2(n_lat, h_tilde);
    dec.f_dot = f.dot(h1);
    dec.f_modulus = in.delta() * co;
    if (mod_pos(dec.f_dot, abs(dec.f_modulus)) != 0)
        throw witness_verification_failed("f(Htilde) . h_1 divisibility fails");

    dec.chain = build_chain(in, series, dec);
    const MukaiVector start(t.r(), LatticeVector(n_lat, {t.d(), 0}), t.s());
    if (!replay(dec.chain, start).reached_surface)
        throw witness_verification_failed("isomorphism chain does not replay");
    return dec;
}

}  // namespace

SeriesDecision rank2_series_check(const Rank2Input& input) {
    const MukaiType& t = input.type();

    SeriesDecision dec;
    dec.det = input.det();
    dec.delta = input.delta();
    dec.n_v = igcd(t.c(), t.d() * input.gamma());
    if (dec.n_v > 1) {
        dec.isomorphic = false;
        dec.reason = NonIsoReason::index_obstruction;
        return dec;
    }

    const GramLattice n_lat(input.gram());
    for (Series series : {Series::a, Series::b}) {
        const Bqf form = series_form(input, series);
        for (int sign : {+1, -1}) {
            if (auto w = represents(form, sign))
                return decide_with_witness(input, series, sign, *w, n_lat,
                                           dec.n_v);
        }
    }
    dec.isomorphic = false;
    dec.reason = NonIsoReason::both_equations_insoluble;
    return dec;
}

bool sufficient_high_rank(const GramLattice& n, const LatticeVector& h,
                          const MukaiType& t) {
    if (!(h.ambient() == n))
        throw invalid_input("polarization must live in the given lattice");
    if (h.squared() != 2 * t.r() * t.s())
        throw type_mismatch("H^2 != 2 r s");
    if (h.content() != t.d())
        throw type_mismatch("content of H differs from the type's d");
    const Int gamma = divisibility(primitive_part(h).primitive);

    std::size_t length = 0;
    for (const Int& f : smith_normal_form(n.gram()).diagonal())
        if (f != 1) ++length;
    return static_cast<long long>(length) <=
               static_cast<long long>(n.rank()) - 2 &&
           igcd(gamma, t.c()) == 1;
}

CriticalityCertificate verify_rank3_example() {
    CriticalityCertificate cert;

    const GramLattice k_lat(IntMat{{-6, -3}, {-3, -10}}, {"e1", "e2"});
    cert.k_even = k_lat.is_even();
    cert.k_negative_definite = k_lat.is_negative_definite();
    cert.k_no_minus_two = !definite_represents(k_lat, Int(-2)).has_value();

    const GramLattice s_lat(
        IntMat{{130, 0, 0}, {0, -6, -3}, {0, -3, -10}}, {"H", "e1", "e2"});
    const LatticeVector h(s_lat, {1, 0, 0});
    const MukaiType type(5, 13, 1);

    cert.s_invariant_factors = smith_normal_form(s_lat.gram()).diagonal();
    std::size_t length = 0;
    for (const Int& f : cert.s_invariant_factors)
        if (f != 1) ++length;
    cert.s_cyclic = length == 1;
    cert.rank3_isomorphism = sufficient_high_rank(s_lat, h, type);

    cert.gamma = divisibility(h);
    cert.gamma_forced = cert.gamma == h.squared() && cert.gamma == 130;

    cert.necessary_blocked = necessary_condition(type, cert.gamma).blocked;
    cert.rank1_excluded = !rank1_self_iso(type);

    if (!cert.all_verified())
        throw internal_error("rank-3 criticality certificate failed");
    return cert;
}

std::vector<CriticalHit> search_critical_rank2(const MukaiType& t,
                                               const Int& gamma,
                                               const Int& k_max,
                                               const Int& t_max,
                                               unsigned workers) {
    if (t.s() < 1) throw invalid_input("search needs s >= 1");
    if (gamma < 1) throw invalid_gamma("gamma must be positive");
    if ((2 * t.a1() * t.b1()) % gamma != 0)
        throw invalid_gamma("search needs gamma | 2 a_1 b_1");
    if (igcd(gamma, t.c()) != 1)
        throw invalid_gamma("search needs (gamma, c) = 1");
    if (k_max < 0 || t_max < 0)
        throw invalid_input("search bounds must be non-negative");
    if (workers < 1) throw invalid_input("worker count must be >= 1");

    const Int m = exact_div(t.h_tilde_square(), gamma);
    std::vector<std::pair<Int, Int>> grid;
    for (Int k = 1; k <= k_max; ++k) {
        if (igcd(m, k) != 1) continue;
        for (Int tc = -t_max; tc <= t_max; ++tc) {
            const Int det = 2 * t.h_tilde_square() * tc - gamma * gamma * k * k;
            if (det < 0) grid.emplace_back(k, tc);
        }
    }

    const bool critical = !rank1_self_iso(t);
    auto evaluate = [&](std::size_t begin, std::size_t end,
                        std::vector<CriticalHit>& out) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& [k, tc] = grid[i];
            SeriesDecision dec =
                rank2_series_check(Rank2Input(t, gamma, k, tc));
            if (!dec.isomorphic) continue;
            out.push_back(CriticalHit{k, tc, dec.det, std::move(dec), critical});
        }
    };

    std::vector<CriticalHit> hits;
    if (workers == 1 || grid.size() < 2) {
        evaluate(0, grid.size(), hits);
    } else {
        const std::size_t n = grid.size();
        const std::size_t parts = std::min<std::size_t>(workers, n);
        std::vector<std::vector<CriticalHit>> partial(parts);
        std::vector<std::exception_ptr> errors(parts);
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < parts; ++w) {
            const std::size_t begin = n * w / parts;
            const std::size_t end = n * (w + 1) / parts;
            pool.emplace_back([&, w, begin, end] {
                try {
                    evaluate(begin, end, partial[w]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (std::thread& th : pool) th.join();
        for (const std::exception_ptr& e : errors)
            if (e) std::rethrow_exception(e);
        // Chunks are contiguous slices of the sorted grid, so concatenation
        // in worker order is already (k, t_coeff)-sorted.
        for (std::vector<CriticalHit>& part : partial)
            for (CriticalHit& hit : part) hits.push_back(std::move(hit));
    }

    // Deduplicate by (det, series, h_1^2), keeping the first in grid order.
    std::vector<CriticalHit> unique;
    std::vector<std::tuple<Int, Series, Int>> seen;
    for (CriticalHit& hit : hits) {
        std::tuple<Int, Series, Int> key{hit.det, *hit.decision.series,
                                         hit.decision.h_tilde_1_square};
        bool duplicate = false;
        for (const auto& s : seen)
            if (s == key) {
                duplicate = true;
                break;
            }
        if (duplicate) continue;
        seen.push_back(std::move(key));
        unique.push_back(std::move(hit));
    }
    return unique;
}

}  // namespace k3corr
