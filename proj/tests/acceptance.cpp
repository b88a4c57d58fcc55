// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Everything is exact arithmetic; expected values are frozen from
// independent oracles (residue scans, brute-force enumeration) computed here.

#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "k3corr/criteria.hpp"
#include "k3corr/errors.hpp"

using namespace k3corr;

namespace {

int failures = 0;

void criterion(int number, const std::string& name,
               const std::function<bool()>& body) {
    bool ok = false;
    std::string detail;
    try {
        ok = body();
    } catch (const std::exception& e) {
        detail = std::string(" (") + e.what() + ")";
    }
    std::printf("[%s] %2d. %s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

Int mukai_element_scan(const Int& a, const Int& b) {
    const Int mod = 2 * a * b;
    for (Int m = 0; m < mod; ++m)
        if (mod_pos(m + 1, 2 * a) == 0 && mod_pos(m - 1, 2 * b) == 0) return m;
    return -1;
}

bool mukai_elements() {
    if (mukai_element(5, 13) != 79 || mukai_element_scan(5, 13) != 79)
        return false;
    if (mukai_element(2, 3) != 7 || mukai_element_scan(2, 3) != 7) return false;
    for (Int a = 1; a <= 60; ++a)
        for (Int b = a; b <= 60; ++b) {
            if (igcd(a, b) != 1) continue;
            if (mukai_element(a, b) != mukai_element_scan(a, b)) return false;
        }
    return true;
}

bool discriminant_of_s() {
    const GramLattice s(IntMat{{130, 0, 0}, {0, -6, -3}, {0, -3, -10}});
    const DiscriminantGroup g = discriminant_group(s);
    return g.invariant_factors == std::vector<Int>{1, 1, 6630} &&
           g.length() == 1 && g.order() == 2 * 3 * 5 * 13 * 17;
}

bool k_has_no_minus_two() {
    const GramLattice k(IntMat{{-6, -3}, {-3, -10}});
    if (!k.is_even() || !k.is_negative_definite()) return false;
    if (definite_represents(k, Int(-2)).has_value()) return false;
    // Equivalent diagonal statement: 6x^2 + 34y^2 = 8 has no solutions.
    const GramLattice diag(IntMat{{-6, 0}, {0, -34}});
    if (definite_represents(diag, Int(-8)).has_value()) return false;
    return !represents_value(Bqf(6, 0, 34), 8, 1000).found();
}

bool example_5_13_blocked() {
    const MukaiType t(5, 13, 1);
    return necessary_condition(t, 65).blocked &&
           necessary_condition(t, 130).blocked;
}

bool rank3_certificate() {
    const CriticalityCertificate cert = verify_rank3_example();
    return cert.all_verified();
}

bool bqf_solver_vs_oracle() {
    const Int bound = 10000;
    for (int a = -12; a <= 12; ++a)
        for (int b = -12; b <= 12; ++b)
            for (int c = -12; c <= 12; ++c) {
                const Bqf f(a, b, c);
                if (f.disc() == 0) continue;
                for (int n : {1, -1}) {
                    const auto certified = represents(f, n);
                    if (certified && f.eval(certified->x, certified->y) != n)
                        return false;
                    const OracleResult scanned = represents_value(f, n, bound);
                    if (scanned.found() && !certified) return false;
                    if (!certified && scanned.found()) return false;
                }
            }
    const auto pell_plus = represents(Bqf(1, 0, -2), 1);
    const auto pell_minus = represents(Bqf(1, 0, -2), -1);
    return pell_plus.has_value() && pell_minus.has_value();
}

bool rank2_cross_validation() {
    struct Case {
        MukaiType t;
        Int gamma;
    };
    const Case cases[] = {{MukaiType(2, 2, 1), 1},
                          {MukaiType(5, 13, 1), 65},
                          {MukaiType(4, 9, 6), 1}};
    for (const Case& cs : cases) {
        const bool blocked = necessary_condition(cs.t, cs.gamma).blocked;
        const Int m = exact_div(cs.t.h_tilde_square(), cs.gamma);
        int isomorphic = 0;
        for (Int k = -10; k <= 10; ++k) {
            if (igcd(m, k) != 1) continue;
            for (Int tc = -10; tc <= 10; ++tc) {
                if (2 * cs.t.h_tilde_square() * tc == cs.gamma * cs.gamma * k * k)
                    continue;
                // Divisibility verification and chain replay run on every
                // witness inside; a failure throws and fails the criterion.
                if (rank2_series_check(Rank2Input(cs.t, cs.gamma, k, tc))
                        .isomorphic)
                    ++isomorphic;
            }
        }
        if (blocked && isomorphic != 0) return false;
        if (!blocked && isomorphic == 0) return false;
    }
    return true;
}

bool rank1_criterion_exhaustive() {
    for (int r = 1; r <= 40; ++r)
        for (int s = 1; s <= 40; ++s) {
            const Int c = igcd(r, s);
            const Int ab = Int(r) * s / (c * c);
            for (Int d = 1; d * d <= ab; ++d) {
                if (ab % (d * d) != 0 || igcd(c, d) != 1) continue;
                const MukaiType t(r, s, d);
                const GramLattice amb(IntMat{{t.h_tilde_square()}});
                const Rank1Reduction red =
                    reduce_rank1(MukaiVector(r, LatticeVector(amb, {d}), s));
                const bool tyurin_shape =
                    red.reduced.r() == 1 &&
                    2 * red.reduced.s() == t.h_tilde_square();
                if (rank1_self_iso(t) != tyurin_shape) return false;
                const bool direct = t.c() == 1 && (t.a1() == 1 || t.b1() == 1);
                if (rank1_self_iso(t) != direct) return false;
            }
        }
    return true;
}

bool recover_ab_roundtrip() {
    for (Int a = 1; a <= 100; ++a)
        for (Int b = a; b <= 100; ++b) {
            if (igcd(a, b) != 1) continue;
            const Int m = mukai_element(a, b);
            const Int mod = 2 * a * b;
            if (recover_ab(a * b, m) != std::pair<Int, Int>{a, b}) return false;
            if (recover_ab(a * b, mod_pos(-m, mod)) != std::pair<Int, Int>{a, b})
                return false;
        }
    return true;
}

bool period_index_is_gcd() {
    std::mt19937 rng(20240902);
    std::uniform_int_distribution<int> dist(1, 400);
    for (int i = 0; i < 1000; ++i) {
        const Int r = dist(rng);
        const Int s = dist(rng);
        if (period_transform(r, s).index_over_base != igcd(r, s)) return false;
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "Mukai elements match the residue scan (a <= b <= 60)",
              mukai_elements);
    criterion(2, "A_S is cyclic of order 6630 with factors (1, 1, 6630)",
              discriminant_of_s);
    criterion(3, "K is even, negative definite, with no -2 vectors",
              k_has_no_minus_two);
    criterion(4, "type (5, 13) is blocked for gamma = 65 and 130",
              example_5_13_blocked);
    criterion(5, "rank-3 criticality certificate verifies all four facts",
              rank3_certificate);
    criterion(6, "certified +-1 decisions agree with the oracle, |a|,|b|,|c| <= 12",
              bqf_solver_vs_oracle);
    criterion(7, "rank-2 witnesses verify on the grids; blocked types stay empty",
              rank2_cross_validation);
    criterion(8, "rank-1 criterion matches reduction, exhaustive r, s <= 40",
              rank1_criterion_exhaustive);
    criterion(9, "recover_ab round-trips both residues, a <= b <= 100",
              recover_ab_roundtrip);
    criterion(10, "period index over the base equals gcd(r, s), 1000 samples",
              period_index_is_gcd);
    if (failures == 0) {
        std::printf("all 10 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
