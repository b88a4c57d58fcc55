#include "k3corr/bqf.hpp"

#include <algorithm>
#include <cstdint>

#include "k3corr/errors.hpp"

namespace k3corr {

Bqf::Bqf(Int a, Int b, Int c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    disc_ = b_ * b_ - 4 * a_ * c_;
}

Int Bqf::eval(const Int& x, const Int& y) const {
    return a_ * x * x + b_ * x * y + c_ * y * y;
}

bool Bqf::is_indefinite_nonsquare() const {
    return disc_ > 0 && !is_perfect_square(disc_);
}

bool Bqf::is_reduced_indefinite() const {
    if (!is_indefinite_nonsquare()) return false;
    if (b_ <= 0 || b_ * b_ >= disc_) return false;
    const Int two_a = 2 * abs(a_);
    if ((two_a + b_) * (two_a + b_) <= disc_) return false;  // sqrt(D) - b < 2|a|
    if (two_a > b_ && (two_a - b_) * (two_a - b_) >= disc_)  // 2|a| < sqrt(D) + b
        return false;
    return true;
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return Mat2{m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
}

Bqf transformed(const Bqf& f, const Mat2& m) {
    const Int a = f.eval(m.m00, m.m10);
    const Int c = f.eval(m.m01, m.m11);
    const Int b = 2 * f.a() * m.m00 * m.m01 +
                  f.b() * (m.m00 * m.m11 + m.m01 * m.m10) +
                  2 * f.c() * m.m10 * m.m11;
    return Bqf(a, b, c);
}

namespace {

Representation make_witness(const Bqf& f, Int x, Int y, const Int& n) {
    if (f.eval(x, y) != n)
        throw witness_verification_failed("representation does not satisfy its equation");
    return Representation{std::move(x), std::move(y), n};
}

// Replace (x, y) by (-x, -y) so that x > 0, or x = 0 and y >= 0.
void normalize_sign(Int& x, Int& y) {
    if (x < 0 || (x == 0 && y < 0)) {
        x = -x;
        y = -y;
    }
}

/* ---- reduction cycle for indefinite non-square discriminant ---- */

// One step of the reduction operator rho: (a, b, c) -> (c, r, (r^2-D)/4c)
// with r = -b mod 2|c| picked in (-|c|, |c|] while |c| > sqrt(D), and in
// (sqrt(D) - 2|c|, sqrt(D)) once |c| < sqrt(D).  The substitution matrix is
// [[0, -1], [1, (b + r)/2c]].
struct RhoStep {
    Bqf next;
    Mat2 m;
};

RhoStep rho(const Bqf& f) {
    const Int& d = f.disc();
    const Int& c = f.c();
    const Int cc = abs(c);
    Int r;
    if (cc * cc > d) {
        r = mod_pos(-f.b(), 2 * cc);
        if (r > cc) r -= 2 * cc;
    } else {
        const Int s = isqrt(d);
        r = s - mod_pos(s + f.b(), 2 * cc);
    }
    const Int m = exact_div(f.b() + r, 2 * c);
    Bqf next(c, r, exact_div(r * r - d, 4 * c));
    return RhoStep{std::move(next), Mat2{0, -1, 1, m}};
}

constexpr int kMaxReductionSteps = 1 << 20;

/* ---- shell enumeration shared by the oracle and the definite case ----
 *
 * For fixed y the equation f(x, y) = n is a quadratic (or linear) in x and
 * is solved exactly; candidates within one shell |y| = ay are ordered by
 * (|x|, x > 0 first, y > 0 first), shells by ascending |y|.
 */

template <class I>
struct Candidate {
    I x, y;
};

template <class I>
void sort_shell(std::vector<Candidate<I>>& cs) {
    std::sort(cs.begin(), cs.end(), [](const Candidate<I>& p, const Candidate<I>& q) {
        const I px = p.x < 0 ? I(-p.x) : p.x;
        const I qx = q.x < 0 ? I(-q.x) : q.x;
        if (px != qx) return px < qx;
        const bool pneg = p.x < 0, qneg = q.x < 0;
        if (pneg != qneg) return qneg;
        return (q.y < 0) && !(p.y < 0);
    });
}

unsigned __int128 isqrt_u128(unsigned __int128 v) {
    if (v == 0) return 0;
    const std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
    const std::uint64_t lo = static_cast<std::uint64_t>(v);
    const int bits = hi ? 128 - __builtin_clzll(hi)
                        : (lo ? 64 - __builtin_clzll(lo) : 0);
    unsigned __int128 x = static_cast<unsigned __int128>(1) << ((bits + 1) / 2);
    for (;;) {
        const unsigned __int128 y = (x + v / x) >> 1;
        if (y >= x) return x;
        x = y;
    }
}

bool isqrt_exact(const __int128 v, __int128& root) {
    if (v < 0) return false;
    const unsigned __int128 r = isqrt_u128(static_cast<unsigned __int128>(v));
    root = static_cast<__int128>(r);
    return root * root == v;
}

bool isqrt_exact(const Int& v, Int& root) {
    if (v < 0) return false;
    root = isqrt(v);
    return root * root == v;
}

// Solutions of f(x, y0) = n over all integers x, for one concrete y0.
template <class I, class Wide>
void solve_fixed_y(const I& a, const I& b, const I& c, const I& n, const I& y0,
                   std::vector<Candidate<I>>& out) {
    if (a != 0) {
        const Wide wy = Wide(y0);
        const Wide delta =
            (Wide(b) * b - 4 * Wide(a) * c) * wy * wy + 4 * Wide(a) * n;
        Wide root;
        if (!isqrt_exact(delta, root)) return;
        const Wide twoa = 2 * Wide(a);
        for (int sgn : {+1, -1}) {
            const Wide num = -Wide(b) * wy + sgn * root;
            if (num % twoa != 0) continue;
            out.push_back(Candidate<I>{I(num / twoa), y0});
            if (root == 0) break;
        }
        return;
    }
    if (y0 == 0) {
        if (n == 0) out.push_back(Candidate<I>{I(0), I(0)});
        return;
    }
    if (b != 0) {
        const Wide num = Wide(n) - Wide(c) * y0 * y0;
        const Wide den = Wide(b) * y0;
        if (num % den == 0) out.push_back(Candidate<I>{I(num / den), y0});
        return;
    }
    if (Wide(c) * y0 * y0 == Wide(n)) out.push_back(Candidate<I>{I(0), y0});
}

// x_bound < 0 means x is unrestricted (the certified definite decision);
// the oracle passes the same box bound for both coordinates.
template <class I, class Wide>
std::optional<std::pair<Int, Int>> scan_shells(const I& a, const I& b,
                                               const I& c, const I& n,
                                               const I& y_bound,
                                               const I& x_bound,
                                               bool stop_when_definite_exhausted) {
    const Wide disc = Wide(b) * b - 4 * Wide(a) * c;
    std::vector<Candidate<I>> shell;
    for (I ay = 0; ay <= y_bound; ++ay) {
        if (stop_when_definite_exhausted && a != 0 && disc < 0 &&
            disc * Wide(ay) * ay + 4 * Wide(a) * n < 0)
            break;  // every later shell is empty too
        shell.clear();
        solve_fixed_y<I, Wide>(a, b, c, n, ay, shell);
        if (ay != 0) solve_fixed_y<I, Wide>(a, b, c, n, I(-ay), shell);
        if (x_bound >= 0)
            std::erase_if(shell, [&](const Candidate<I>& cd) {
                return cd.x < -x_bound || cd.x > x_bound;
            });
        if (shell.empty()) continue;
        sort_shell(shell);
        return std::make_pair(Int(shell.front().x), Int(shell.front().y));
    }
    return std::nullopt;
}

bool fits_fast_path(const Bqf& f, const Int& n, const Int& bound) {
    const Int lim_coef = Int(1) << 20;
    const Int lim = Int(1) << 30;
    return abs(f.a()) <= lim_coef && abs(f.b()) <= lim_coef &&
           abs(f.c()) <= lim_coef && abs(n) <= lim && bound <= lim;
}

/* ---- square discriminant: factor into two integral linear forms ---- */

struct LinearFactors {
    Int content;          // f = content * (a1 x + b1 y)(a2 x + b2 y)
    Int a1, b1, a2, b2;   // each factor primitive
};

LinearFactors factor_square_disc(const Bqf& f, const Int& e) {
    if (f.a() == 0) {
        // f = y (b x + c y)
        Int g = igcd(f.b(), f.c());
        return LinearFactors{g, 0, 1, exact_div(f.b(), g), exact_div(f.c(), g)};
    }
    // Roots of a t^2 + b t + c are (-b +- e) / 2a; with p/q and r/s in lowest
    // terms (q, s > 0), Gauss's lemma gives f = (a/qs)(qx - py)(sx - ry).
    Rat t1 = Rat(-f.b() + e) / Rat(2 * f.a());
    Rat t2 = Rat(-f.b() - e) / Rat(2 * f.a());
    const Int p = numerator(t1), q = denominator(t1);
    const Int r = numerator(t2), s = denominator(t2);
    return LinearFactors{exact_div(f.a(), q * s), q, -p, s, -r};
}

std::optional<Representation> represents_square_disc(const Bqf& f, int n,
                                                     const Int& e) {
    const LinearFactors lf = factor_square_disc(f, e);
    if (lf.content != 1 && lf.content != -1) return std::nullopt;
    const Int det = lf.a1 * lf.b2 - lf.b1 * lf.a2;  // nonzero: distinct roots
    // content * e1 * e2 = n with e1, e2 in {+1, -1}
    const int prod = lf.content == Int(n) ? 1 : -1;
    for (int e1 : {+1, -1}) {
        const int e2 = prod * e1;
        const Int nx = Int(e1) * lf.b2 - lf.b1 * Int(e2);
        const Int ny = lf.a1 * Int(e2) - Int(e1) * lf.a2;
        if (nx % det != 0 || ny % det != 0) continue;
        Int x = nx / det, y = ny / det;
        normalize_sign(x, y);
        return make_witness(f, x, y, Int(n));
    }
    return std::nullopt;
}

/* ---- disc = 0: content times the square of a primitive linear form ---- */

std::optional<Representation> represents_zero_disc(const Bqf& f, int n) {
    if (f.a() == 0 && f.b() == 0 && f.c() == 0) return std::nullopt;
    const Int g = f.content();
    if (g != 1) return std::nullopt;
    // Primitive with disc 0: f = sign * (u x + v y)^2, gcd(u, v) = 1.
    int sign;
    Int u, v;
    if (f.a() != 0) {
        sign = f.a() > 0 ? 1 : -1;
        if (!is_perfect_square(sign * f.a(), &u) ||
            !is_perfect_square(sign * f.c(), &v))
            throw internal_error("primitive zero-disc form is not a square");
        if ((f.b() < 0) == (sign > 0)) v = -v;
    } else {
        // a = 0 forces b = 0 (disc = b^2), so f = c y^2.
        sign = f.c() > 0 ? 1 : -1;
        u = 0;
        v = 1;
    }
    if (sign != n) return std::nullopt;
    const ExtGcd eg = ext_gcd(u, v);
    if (eg.g != 1) throw internal_error("zero-disc linear factor not primitive");
    Int x = eg.x, y = eg.y;
    normalize_sign(x, y);
    return make_witness(f, x, y, Int(n));
}

}  // namespace

std::vector<CycleEntry> reduction_cycle(const Bqf& f) {
    if (!f.is_indefinite_nonsquare())
        throw not_indefinite_nonsquare(
            "reduction cycle needs disc > 0 and not a perfect square");
    Bqf g = f;
    Mat2 u = Mat2::identity();
    int guard = 0;
    while (!g.is_reduced_indefinite()) {
        RhoStep step = rho(g);
        g = step.next;
        u = u * step.m;
        if (++guard > kMaxReductionSteps)
            throw internal_error("reduction did not terminate");
    }
    std::vector<CycleEntry> cycle{CycleEntry{g, u}};
    const Bqf first = g;
    for (;;) {
        RhoStep step = rho(g);
        g = step.next;
        u = u * step.m;
        if (g == first) break;
        cycle.push_back(CycleEntry{g, u});
        if (++guard > kMaxReductionSteps)
            throw internal_error("cycle did not close");
    }
    return cycle;
}

std::optional<Representation> represents(const Bqf& f, int n) {
    if (n != 1 && n != -1)
        throw invalid_target("certified decision is for n = +1 or -1 only");

    if (f.disc() < 0) {
        // Definite: sign screen, then complete shell enumeration.
        if ((f.a() > 0) != (n > 0)) return std::nullopt;
        // 4 a f = (2ax + by)^2 - disc y^2 bounds |y| by sqrt(4an/|disc|).
        const Int yb = isqrt(Int((4 * f.a() * n) / -f.disc()));
        auto hit = scan_shells<Int, Int>(f.a(), f.b(), f.c(), Int(n), yb,
                                         Int(-1), true);
        if (!hit) return std::nullopt;
        normalize_sign(hit->first, hit->second);
        return make_witness(f, hit->first, hit->second, Int(n));
    }

    if (f.disc() == 0) return represents_zero_disc(f, n);

    Int e;
    if (is_perfect_square(f.disc(), &e)) return represents_square_disc(f, n, e);

    // Indefinite, non-square disc: |n| = 1 < sqrt(disc)/2 since disc >= 5,
    // so n is represented iff it leads some form of the cycle.
    for (const CycleEntry& entry : reduction_cycle(f)) {
        if (entry.form.a() != n) continue;
        Int x = entry.transform.m00, y = entry.transform.m10;
        normalize_sign(x, y);
        return make_witness(f, x, y, Int(n));
    }
    return std::nullopt;
}

OracleResult represents_value(const Bqf& f, const Int& n, const Int& bound) {
    if (bound < 1) throw invalid_input("oracle search bound must be >= 1");
    std::optional<std::pair<Int, Int>> hit;
    if (fits_fast_path(f, n, bound)) {
        using LL = long long;
        hit = scan_shells<LL, __int128>(
            static_cast<LL>(f.a()), static_cast<LL>(f.b()),
            static_cast<LL>(f.c()), static_cast<LL>(n),
            static_cast<LL>(bound), static_cast<LL>(bound), true);
    } else {
        hit = scan_shells<Int, Int>(f.a(), f.b(), f.c(), n, bound, bound, true);
    }
    if (!hit) return OracleResult{std::nullopt, bound};
    return OracleResult{make_witness(f, hit->first, hit->second, n), bound};
}

}  // namespace k3corr
