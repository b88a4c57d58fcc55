#pragma once

#include <optional>
#include <vector>

#include "k3corr/bqf.hpp"
#include "k3corr/lattice.hpp"
#include "k3corr/mukai.hpp"

namespace k3corr {

// Picard number one criterion: M_X(r, H, s) = X iff the reduced vector is
// (1, Htilde, Htilde^2/2), i.e. c = 1 and a_1 = 1 or b_1 = 1.
bool rank1_self_iso(const MukaiType& t);

struct NecessitySide {
    bool a_side_ok;  // all p | gamma_b have (+-a_1 c / p) = 1
    bool b_side_ok;  // all p | gamma_a have (+-b_1 c / p) = 1
};

// Legendre-symbol necessary conditions for a divisorial isomorphism.
// blocked means: for both signs, some p | gamma_b rejects the a-side and
// some p | gamma_a rejects the b-side, so no rank <= 2 lattice works.
struct NecessityReport {
    Int gamma, gamma_a, gamma_b;
    NecessitySide plus, minus;
    bool blocked;
};
NecessityReport necessary_condition(const MukaiType& t, const Int& gamma);

// Encodes the rank-2 lattice N = [[2 a_1 b_1 c^2, gamma k], [gamma k, 2 t]]
// in the basis (Htilde, D), with (2 a_1 b_1 c^2 / gamma, k) = 1 so that
// Htilde . N = gamma Z.
class Rank2Input {
  public:
    Rank2Input(MukaiType t, Int gamma, Int k, Int t_coeff);

    const MukaiType& type() const { return t_; }
    const Int& gamma() const { return gamma_; }
    const Int& k() const { return k_; }
    const Int& t_coeff() const { return t_coeff_; }

    // 2 a_1 b_1 c^2 / gamma
    Int m() const { return exact_div(t_.h_tilde_square(), gamma_); }
    Int det() const;
    // delta with det N = -gamma delta (always integral here)
    Int delta() const { return exact_div(-det(), gamma_); }
    IntMat gram() const;

  private:
    MukaiType t_;
    Int gamma_, k_, t_coeff_;
};

enum class Series { a, b };
enum class NonIsoReason { index_obstruction, both_equations_insoluble };

struct SeriesDecision {
    bool isomorphic = false;

    // Isomorphic payload.
    std::optional<Series> series;
    int sign = 0;                           // the represented unit
    std::optional<Representation> witness;  // solution of the series form
    std::vector<Int> h_tilde_1;             // coords in the basis (Htilde, D)
    Int h_tilde_1_square;
    Int d2;
    std::vector<Int> d_used;  // D with h_1 = d2 Htilde + (b_1 c or a_1 c) D
    IsomorphismChain chain;
    Int h_dot, h_modulus;  // Htilde . h_1 and its required divisor
    Int f_dot, f_modulus;  // f(Htilde) . h_1 and its required divisor

    // Non-isomorphic payload.
    std::optional<NonIsoReason> reason;
    Int n_v;

    // Context.
    Int det, delta;
};

// The rank-2 criterion: index obstruction n(v) = (c, d gamma) first, then
// the a-series form (a_1 c, gamma k, b_1 c t) and the b-series form
// (b_1 c, gamma k, a_1 c t) solved for +-1; a witness is turned into
// h_1 = x Htilde + y (b_1 c) D, verified against the series divisibility
// conditions, and packaged with the explicit isomorphism chain.
SeriesDecision rank2_series_check(const Rank2Input& input);

// l(A_N) <= rk N - 2 together with (gamma, c) = 1 certifies the
// isomorphism via uniqueness of the primitive embedding into the K3
// cohomology lattice.
bool sufficient_high_rank(const GramLattice& n, const LatticeVector& h,
                          const MukaiType& t);

// Mechanized verification that S = <130> + K with K = [[-6,-3],[-3,-10]]
// and the type (5, 13, 1) is a critical polarized K3 Picard lattice of
// rank 3.  Any failed sub-check throws internal_error.
struct CriticalityCertificate {
    // (i) K is even, negative definite and has no -2 vectors.
    bool k_even = false;
    bool k_negative_definite = false;
    bool k_no_minus_two = false;
    // (ii) A_S is cyclic of order 6630 and l(A_S) <= rk S - 2 with
    // (gamma, c) = 1, so the rank-3 isomorphism holds.
    std::vector<Int> s_invariant_factors;
    bool s_cyclic = false;
    bool rank3_isomorphism = false;
    // (iii) H . S = H^2 Z forces gamma = 130 for every sublattice through H.
    Int gamma;
    bool gamma_forced = false;
    // (iv) the necessary condition is blocked and the rank-1 criterion
    // fails, so no rank-1 or rank-2 condition implies the isomorphism.
    bool necessary_blocked = false;
    bool rank1_excluded = false;

    bool all_verified() const {
        return k_even && k_negative_definite && k_no_minus_two && s_cyclic &&
               rank3_isomorphism && gamma_forced && necessary_blocked &&
               rank1_excluded;
    }
};
CriticalityCertificate verify_rank3_example();

struct CriticalHit {
    Int k, t_coeff;
    Int det;
    SeriesDecision decision;
    bool critical;  // isomorphic at rank 2 while the rank-1 criterion fails
};

// Grid search over k in [1, k_max] with (2 a_1 b_1 c^2 / gamma, k) = 1 and
// t_coeff in [-t_max, t_max], keeping hyperbolic lattices (det < 0) whose
// rank-2 check succeeds; sorted by (k, t_coeff), deduplicated by
// (det, series, h_1^2).  The grid may be fanned across workers; the merge
// is order-independent.
std::vector<CriticalHit> search_critical_rank2(const MukaiType& t,
                                               const Int& gamma,
                                               const Int& k_max,
                                               const Int& t_max,
                                               unsigned workers = 1);

// Rank bound for critical polarized K3 Picard lattices.
constexpr int critical_rank_bound() { return 12; }

}  // namespace k3corr
