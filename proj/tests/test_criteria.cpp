#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "k3corr/criteria.hpp"
#include "k3corr/errors.hpp"

using namespace k3corr;

TEST_CASE("rank-1 criterion") {
    CHECK(rank1_self_iso(MukaiType(1, 65, 1)));
    CHECK(!rank1_self_iso(MukaiType(5, 13, 1)));
    CHECK(rank1_self_iso(MukaiType(4, 9, 6)));
    CHECK(!rank1_self_iso(MukaiType(2, 2, 1)));
}

TEST_CASE("rank-1 criterion matches direct reduction, exhaustively") {
    for (int r = 1; r <= 40; ++r)
        for (int s = 1; s <= 40; ++s) {
            const Int c = igcd(r, s);
            const Int ab = Int(r) * s / (c * c);
            for (Int d = 1; d * d <= ab; ++d) {
                if (ab % (d * d) != 0 || igcd(c, d) != 1) continue;
                const MukaiType t(r, s, d);
                const GramLattice amb(IntMat{{t.h_tilde_square()}});
                const MukaiVector v(r, LatticeVector(amb, {d}), s);
                const Rank1Reduction red = reduce_rank1(v);
                // M = X at rank 1 iff the reduced vector is (1, H, H^2/2).
                const bool direct = red.reduced.r() == 1 &&
                                    red.reduced.s() == t.a1() * t.b1() * c * c;
                CHECK(rank1_self_iso(t) == direct);
            }
        }
}

TEST_CASE("Legendre symbol") {
    CHECK(legendre(5, 13) == -1);
    CHECK(legendre(1, 13) == 1);
    CHECK(legendre(1, 97) == 1);
    CHECK(legendre(17, 2) == 1);
    CHECK(legendre(3, 2) == -1);
    CHECK(legendre(4, 2) == 0);
    CHECK(legendre(26, 13) == 0);
    CHECK(legendre(-5, 13) == -1);  // -5 = 8 mod 13, a non-residue
    CHECK(legendre(-1, 13) == 1);
    // Euler criterion cross-check against a direct square scan mod p.
    for (Int p : {3, 5, 7, 11, 13, 17, 19, 23}) {
        for (Int a = 1; a < p; ++a) {
            bool square = false;
            for (Int x = 0; x < p; ++x)
                if (mod_pos(x * x - a, p) == 0) square = true;
            CHECK(legendre(a, p) == (square ? 1 : -1));
        }
    }
}

TEST_CASE("necessary condition") {
    SUBCASE("the (5, 13) example is blocked for both gammas") {
        const MukaiType t(5, 13, 1);
        CHECK(necessary_condition(t, 65).blocked);
        CHECK(necessary_condition(t, 130).blocked);
    }
    SUBCASE("(3, 5) with gamma 15 is not blocked") {
        const NecessityReport rep = necessary_condition(MukaiType(3, 5, 1), 15);
        CHECK(!rep.blocked);
        CHECK(rep.minus.b_side_ok);  // (-5/3) = (1/3) = +1
        CHECK(!rep.plus.a_side_ok);
        CHECK(!rep.plus.b_side_ok);
        CHECK(!rep.minus.a_side_ok);
    }
    SUBCASE("gamma 1 is vacuously unblocked") {
        CHECK(!necessary_condition(MukaiType(5, 13, 1), 1).blocked);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(necessary_condition(MukaiType(5, 13, 1), 4),
                        invalid_gamma);
        CHECK_THROWS_AS(necessary_condition(MukaiType(6, 10, 1), 4),
                        invalid_gamma);  // (gamma, c) = 2
    }
}

TEST_CASE("rank-2 series check on the worked example") {
    // N = [[8, 1], [1, 0]] for the type (2, 2, 1) with gamma = 1.
    const Rank2Input input(MukaiType(2, 2, 1), 1, 1, 0);
    CHECK(input.det() == -1);
    CHECK(input.delta() == 1);
    const SeriesDecision dec = rank2_series_check(input);
    REQUIRE(dec.isomorphic);
    CHECK(dec.series == Series::a);
    CHECK(dec.sign == +1);
    CHECK(dec.witness->x == 1);
    CHECK(dec.witness->y == -1);
    CHECK(dec.h_tilde_1 == std::vector<Int>{1, -2});
    CHECK(dec.h_tilde_1_square == 4);  // +2 b_1 c
    CHECK(dec.d2 == 1);
    CHECK(dec.h_dot == 6);
    CHECK(dec.h_modulus == 2);
    CHECK(dec.f_dot == -2);
    CHECK(dec.f_modulus == 2);
    CHECK(!dec.chain.empty());
}

TEST_CASE("rank-2 negative decisions") {
    SUBCASE("both equations insoluble") {
        const Rank2Input input(MukaiType(5, 13, 1), 65, 1, 1);
        const SeriesDecision dec = rank2_series_check(input);
        CHECK(!dec.isomorphic);
        CHECK(dec.reason == NonIsoReason::both_equations_insoluble);
    }
    SUBCASE("index obstruction") {
        const Rank2Input input(MukaiType(6, 10, 1), 4, 1, 1);
        const SeriesDecision dec = rank2_series_check(input);
        CHECK(!dec.isomorphic);
        CHECK(dec.reason == NonIsoReason::index_obstruction);
        CHECK(dec.n_v == 2);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(Rank2Input(MukaiType(5, 13, 1), 7, 1, 1), invalid_gamma);
        CHECK_THROWS_AS(Rank2Input(MukaiType(2, 2, 1), 1, 2, 1), invalid_input);
        CHECK_THROWS_AS(Rank2Input(MukaiType(2, 2, 1), 1, 4, 1), invalid_input);
        CHECK_THROWS_AS(Rank2Input(MukaiType(1, 1, 1), 2, 1, 1), invalid_input);
    }
}

TEST_CASE("b-series decisions") {
    // For (2, 1, 1) with k = 3, t = 3 the a-form (2, 3, 3) is positive
    // definite and misses both units, while the b-form (1, 3, 6) hits +1.
    const SeriesDecision dec =
        rank2_series_check(Rank2Input(MukaiType(2, 1, 1), 1, 3, 3));
    REQUIRE(dec.isomorphic);
    CHECK(dec.series == Series::b);
    CHECK(dec.sign == +1);
    CHECK(dec.h_tilde_1_square == 4);  // +2 a_1 c
}

TEST_CASE("a-series witness with d2 = 2 on a hyperbolic lattice") {
    const SeriesDecision dec =
        rank2_series_check(Rank2Input(MukaiType(2, 1, 1), 1, 3, -3));
    REQUIRE(dec.isomorphic);
    CHECK(dec.series == Series::a);
    CHECK(dec.sign == -1);
    CHECK(dec.det == -33);
    CHECK(dec.d2 == 2);
    CHECK(dec.h_tilde_1 == std::vector<Int>{2, 3});  // cycle-order witness
    CHECK(dec.h_tilde_1_square == -2);
    // The chain picks up the nontrivial nu(1, 2) rescaling.
    bool has_nu = false;
    for (const Move& m : dec.chain.moves)
        if (const Nu* nu = std::get_if<Nu>(&m)) has_nu = nu->d2 == 2;
    CHECK(has_nu);
}

TEST_CASE("degenerate witness x = 0 still yields a replayable chain") {
    // (2, 1, 1): the a-series form (2, k, t) with t = 1 is positive definite
    // and represents +1 only at (0, +-1).
    const Rank2Input input(MukaiType(2, 1, 1), 1, 1, 1);
    const SeriesDecision dec = rank2_series_check(input);
    REQUIRE(dec.isomorphic);
    CHECK(dec.series == Series::a);
    CHECK(dec.d2 == 0);
    CHECK(dec.h_tilde_1_square == 2);  // +- 2 b_1 c with b_1 c = 1
}

TEST_CASE("every witness over the validation grids verifies and replays") {
    struct Case {
        MukaiType t;
        Int gamma;
        bool expect_hits;  // blocked types must stay empty; some types are
                           // known to hit; the rest only exercise verification
    };
    const Case cases[] = {{MukaiType(2, 2, 1), 1, true},
                          {MukaiType(5, 13, 1), 65, false},
                          {MukaiType(4, 9, 6), 1, true},
                          {MukaiType(2, 1, 1), 1, true},
                          {MukaiType(2, 3, 1), 1, true},
                          {MukaiType(6, 10, 1), 1, false}};
    for (const Case& cs : cases) {
        const Int m = exact_div(cs.t.h_tilde_square(), cs.gamma);
        int isomorphic = 0;
        for (Int k = -10; k <= 10; ++k) {
            if (igcd(m, k) != 1) continue;
            for (Int tc = -10; tc <= 10; ++tc) {
                if (2 * cs.t.h_tilde_square() * tc == cs.gamma * cs.gamma * k * k)
                    continue;
                // Witness verification and chain replay are asserted inside;
                // any inconsistency throws witness_verification_failed.
                const SeriesDecision dec =
                    rank2_series_check(Rank2Input(cs.t, cs.gamma, k, tc));
                if (dec.isomorphic) ++isomorphic;
            }
        }
        if (necessary_condition(cs.t, cs.gamma).blocked)
            CHECK(isomorphic == 0);
        else if (cs.expect_hits)
            CHECK(isomorphic > 0);
    }
}

TEST_CASE("necessity soundness against the equations") {
    // Blocked types admit no witness anywhere on the grid.
    const MukaiType t(5, 13, 1);
    for (const Int gamma : {Int(65), Int(130)}) {
        REQUIRE(necessary_condition(t, gamma).blocked);
        const Int m = exact_div(t.h_tilde_square(), gamma);
        for (Int k = -15; k <= 15; ++k) {
            if (igcd(m, k) != 1) continue;
            for (Int tc = -15; tc <= 15; ++tc) {
                if (2 * t.h_tilde_square() * tc == gamma * gamma * k * k)
                    continue;  // degenerate lattice
                const Rank2Input input(t, gamma, k, tc);
                CHECK(!rank2_series_check(input).isomorphic);
            }
        }
    }
}

TEST_CASE("basis change leaves the decision invariant") {
    // D -> D + m Htilde maps k -> k + m (2 a1 b1 c^2 / gamma) and
    // t -> t + m gamma k + m^2 a1 b1 c^2.
    std::mt19937 rng(7);
    const MukaiType types[] = {MukaiType(2, 2, 1), MukaiType(3, 5, 1),
                               MukaiType(4, 9, 6)};
    int done = 0;
    while (done < 200) {
        const MukaiType& t = types[rng() % 3];
        const Int gamma = 1;
        const Int big_m = t.h_tilde_square();
        const Int k = static_cast<int>(rng() % 15) - 7;
        const Int tc = static_cast<int>(rng() % 15) - 7;
        if (igcd(big_m, k) != 1) continue;
        const Int shift = static_cast<int>(rng() % 11) - 5;
        const Int k2 = k + shift * big_m;
        const Int tc2 = tc + shift * gamma * k +
                        shift * shift * exact_div(big_m, Int(2));
        const Rank2Input a(t, gamma, k, tc);
        const Rank2Input b(t, gamma, k2, tc2);
        if (a.det() == 0) continue;
        REQUIRE(a.det() == b.det());
        ++done;
        const SeriesDecision da = rank2_series_check(a);
        const SeriesDecision db = rank2_series_check(b);
        CHECK(da.isomorphic == db.isomorphic);
        if (da.isomorphic) {
            CHECK(da.series == db.series);
            CHECK(da.h_tilde_1_square == db.h_tilde_1_square);
        }
    }
}

TEST_CASE("high-rank sufficiency") {
    const GramLattice s(IntMat{{130, 0, 0}, {0, -6, -3}, {0, -3, -10}});
    const MukaiType t(5, 13, 1);
    CHECK(sufficient_high_rank(s, LatticeVector(s, {1, 0, 0}), t));

    const GramLattice n(IntMat{{130, 65}, {65, 2}});
    CHECK(!sufficient_high_rank(n, LatticeVector(n, {1, 0}), t));

    const GramLattice u(IntMat{{0, 1}, {1, 0}});
    CHECK(sufficient_high_rank(u, LatticeVector(u, {1, 1}), MukaiType(1, 1, 1)));

    CHECK_THROWS_AS(
        sufficient_high_rank(s, LatticeVector(s, {1, 0, 0}), MukaiType(5, 14, 1)),
        type_mismatch);
    CHECK_THROWS_AS(
        sufficient_high_rank(u, LatticeVector(u, {2, 2}), MukaiType(2, 2, 1)),
        type_mismatch);
}

TEST_CASE("rank-3 certificate") {
    const CriticalityCertificate cert = verify_rank3_example();
    CHECK(cert.k_even);
    CHECK(cert.k_negative_definite);
    CHECK(cert.k_no_minus_two);
    CHECK(cert.s_invariant_factors == std::vector<Int>{1, 1, 6630});
    CHECK(cert.s_cyclic);
    CHECK(cert.rank3_isomorphism);
    CHECK(cert.gamma == 130);
    CHECK(cert.gamma_forced);
    CHECK(cert.necessary_blocked);
    CHECK(cert.rank1_excluded);
    CHECK(cert.all_verified());
}

TEST_CASE("critical search") {
    SUBCASE("the worked type hits and is critical") {
        const auto hits = search_critical_rank2(MukaiType(2, 2, 1), 1, 3, 3);
        REQUIRE(!hits.empty());
        bool has_k1_t0 = false;
        for (const CriticalHit& hit : hits) {
            CHECK(hit.det < 0);
            CHECK(hit.critical);
            CHECK(hit.decision.isomorphic);
            if (hit.k == 1 && hit.t_coeff == 0) has_k1_t0 = true;
        }
        CHECK(has_k1_t0);
    }
    SUBCASE("Tyurin types are never critical") {
        const auto hits = search_critical_rank2(MukaiType(1, 65, 1), 1, 2, 2);
        REQUIRE(!hits.empty());
        for (const CriticalHit& hit : hits) CHECK(!hit.critical);
    }
    SUBCASE("blocked types give an empty list") {
        CHECK(search_critical_rank2(MukaiType(5, 13, 1), 65, 5, 5).empty());
    }
    SUBCASE("worker count never changes the result") {
        const auto one = search_critical_rank2(MukaiType(2, 2, 1), 1, 6, 6, 1);
        for (unsigned w : {2u, 3u, 7u}) {
            const auto many = search_critical_rank2(MukaiType(2, 2, 1), 1, 6, 6, w);
            REQUIRE(many.size() == one.size());
            for (std::size_t i = 0; i < one.size(); ++i) {
                CHECK(one[i].k == many[i].k);
                CHECK(one[i].t_coeff == many[i].t_coeff);
                CHECK(one[i].decision.h_tilde_1 == many[i].decision.h_tilde_1);
            }
        }
    }
    SUBCASE("gamma validation") {
        CHECK_THROWS_AS(search_critical_rank2(MukaiType(6, 10, 1), 4, 3, 3),
                        invalid_gamma);
    }
}

TEST_CASE("rank bound") {
    CHECK(critical_rank_bound() == 12);
    CHECK(3 <= critical_rank_bound());
    CHECK(13 > critical_rank_bound());
}
