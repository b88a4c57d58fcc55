#include "k3corr/lattice.hpp"

#include <algorithm>

#include "k3corr/errors.hpp"

namespace k3corr {

namespace {

// Signature of a symmetric matrix by congruence diagonalization over Q.
// Pivots are brought to the diagonal by symmetric row/column moves; when
// the whole remaining diagonal vanishes, a nonzero off-diagonal entry
// (i, j) is folded in via x_i += x_j, which makes 2 m_ij appear at (i, i).
std::pair<std::size_t, std::size_t> signature_by_diagonalization(
    const IntMat& gram) {
    const std::size_t n = gram.rows();
    RatMat m = to_rational(gram);
    std::size_t pos = 0, neg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, piv) == 0) ++piv;
            if (piv < n) {
                m.swap_rows(k, piv);
                m.swap_cols(k, piv);
            } else {
                bool found = false;
                for (std::size_t i = k; i < n && !found; ++i)
                    for (std::size_t j = i + 1; j < n && !found; ++j)
                        if (m(i, j) != 0) {
                            m.add_row(i, j, Rat(1));
                            m.add_col(i, j, Rat(1));
                            if (i != k) {
                                m.swap_rows(k, i);
                                m.swap_cols(k, i);
                            }
                            found = true;
                        }
                if (!found)
                    throw internal_error(
                        "signature: zero block in non-degenerate form");
            }
        }
        const Rat pivot = m(k, k);
        if (pivot > 0)
            ++pos;
        else
            ++neg;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            const Rat f = -m(i, k) / pivot;
            m.add_row(i, k, f);
            m.add_col(i, k, f);
        }
    }
    return {pos, neg};
}

void require_same_ambient(const GramLattice& a, const GramLattice& b,
                          const char* what) {
    if (!(a == b))
        throw invalid_input(std::string(what) + ": vectors from different lattices");
}

}  // namespace

GramLattice::GramLattice(IntMat gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
    if (gram_.rows() != gram_.cols() || gram_.rows() == 0)
        throw invalid_input("Gram matrix must be square and non-empty");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        for (std::size_t j = i + 1; j < gram_.cols(); ++j)
            if (gram_(i, j) != gram_(j, i))
                throw invalid_input("Gram matrix must be symmetric");
    if (!labels_.empty() && labels_.size() != gram_.rows())
        throw invalid_input("basis label count must match rank");
    det_ = det_bareiss(gram_);
    if (det_ == 0) throw degenerate_lattice("degenerate lattice: det = 0");
    signature_ = signature_by_diagonalization(gram_);
    even_ = true;
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        if (gram_(i, i) % 2 != 0) even_ = false;
}

LatticeVector::LatticeVector(const GramLattice& ambient,
                             std::vector<Int> coords)
    : ambient_(&ambient), coords_(std::move(coords)) {
    if (coords_.size() != ambient.rank())
        throw invalid_input("vector length must equal lattice rank");
}

Int LatticeVector::dot(const LatticeVector& o) const {
    require_same_ambient(*ambient_, *o.ambient_, "dot");
    Int acc = 0;
    const IntMat& g = ambient_->gram();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < coords_.size(); ++j)
            acc += coords_[i] * g(i, j) * o.coords_[j];
    }
    return acc;
}

bool LatticeVector::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Int& c) { return c == 0; });
}

Int LatticeVector::content() const {
    Int g = 0;
    for (const Int& c : coords_) g = igcd(g, c);
    return g;
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
    require_same_ambient(*ambient_, *o.ambient_, "sum");
    std::vector<Int> c(coords_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return LatticeVector(*ambient_, std::move(c));
}

LatticeVector LatticeVector::operator-() const {
    std::vector<Int> c(coords_);
    for (Int& x : c) x = -x;
    return LatticeVector(*ambient_, std::move(c));
}

LatticeVector LatticeVector::scaled(const Int& f) const {
    std::vector<Int> c(coords_);
    for (Int& x : c) x *= f;
    return LatticeVector(*ambient_, std::move(c));
}

bool LatticeVector::operator==(const LatticeVector& o) const {
    return *ambient_ == *o.ambient_ && coords_ == o.coords_;
}

RationalVector::RationalVector(const GramLattice& ambient,
                               std::vector<Rat> coords)
    : ambient_(&ambient), coords_(std::move(coords)) {
    if (coords_.size() != ambient.rank())
        throw invalid_input("vector length must equal lattice rank");
}

RationalVector RationalVector::from(const LatticeVector& v) {
    std::vector<Rat> c;
    c.reserve(v.size());
    for (const Int& x : v.coords()) c.emplace_back(x);
    return RationalVector(v.ambient(), std::move(c));
}

Rat RationalVector::dot(const RationalVector& o) const {
    require_same_ambient(*ambient_, *o.ambient_, "dot");
    Rat acc = 0;
    const IntMat& g = ambient_->gram();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < coords_.size(); ++j)
            acc += coords_[i] * Rat(g(i, j)) * o.coords_[j];
    }
    return acc;
}

bool RationalVector::operator==(const RationalVector& o) const {
    return *ambient_ == *o.ambient_ && coords_ == o.coords_;
}

std::vector<Int> SmithResult::diagonal() const {
    std::vector<Int> out;
    out.reserve(d.rows());
    for (std::size_t i = 0; i < d.rows(); ++i) out.push_back(d(i, i));
    return out;
}

SmithResult smith_normal_form(const IntMat& m) {
    if (m.rows() != m.cols())
        throw invalid_input("Smith normal form: matrix must be square");
    const std::size_t n = m.rows();
    SmithResult r{IntMat::identity(n), m, IntMat::identity(n)};
    IntMat& d = r.d;

    for (std::size_t t = 0; t < n; ++t) {
        // Pivot: smallest |entry| in the trailing block.
        std::size_t pi = t, pj = t;
        Int best = 0;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (d(i, j) == 0) continue;
                if (best == 0 || abs(d(i, j)) < best) {
                    best = abs(d(i, j));
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;  // trailing block is zero
        if (pi != t) {
            d.swap_rows(t, pi);
            r.u.swap_rows(t, pi);
        }
        if (pj != t) {
            d.swap_cols(t, pj);
            r.v.swap_cols(t, pj);
        }

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (d(i, t) == 0) continue;
                Int q = d(i, t) / d(t, t);
                if (q != 0) {
                    d.add_row(i, t, -q);
                    r.u.add_row(i, t, -q);
                }
                if (d(i, t) != 0) {  // remainder survives: promote it
                    d.swap_rows(t, i);
                    r.u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                Int q = d(t, j) / d(t, t);
                if (q != 0) {
                    d.add_col(j, t, -q);
                    r.v.add_col(j, t, -q);
                }
                if (d(t, j) != 0) {
                    d.swap_cols(t, j);
                    r.v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;

            // Pivot must divide the whole trailing block for the chain
            // d_t | d_{t+1} | ... to come out of the recursion.
            bool divides = true;
            for (std::size_t i = t + 1; i < n && divides; ++i)
                for (std::size_t j = t + 1; j < n && divides; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        d.add_row(t, i, Int(1));
                        r.u.add_row(t, i, Int(1));
                        divides = false;
                    }
            if (divides) break;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (d(i, i) < 0) {
            d.negate_row(i);
            r.u.negate_row(i);
        }
    return r;
}

std::size_t DiscriminantGroup::length() const {
    std::size_t l = 0;
    for (const Int& f : invariant_factors)
        if (f != 1) ++l;
    return l;
}

Int DiscriminantGroup::order() const {
    Int o = 1;
    for (const Int& f : invariant_factors) o *= f;
    return o;
}

DiscriminantGroup discriminant_group(const GramLattice& L,
                                     DiscriminantForm form) {
    if (form == DiscriminantForm::quadratic && !L.is_even())
        throw odd_lattice(
            "q_L is defined only for even lattices; request bilinear values");
    const std::size_t n = L.rank();
    SmithResult snf = smith_normal_form(L.gram());

    DiscriminantGroup g;
    g.invariant_factors = snf.diagonal();

    // A_L = Z^n / G Z^n in dual-basis coordinates; with U G V = D the factor
    // Z/d_i is generated by column i of U^{-1}.  In the Gram basis that
    // generator is column i of G^{-1} U^{-1}.
    RatMat gen_cols = rat_inverse(L.gram()) * rat_inverse(snf.u);
    const RatMat gram_q = to_rational(L.gram());
    for (std::size_t i = 0; i < n; ++i) {
        if (g.invariant_factors[i] == 1) continue;
        std::vector<Rat> coords(n);
        for (std::size_t k = 0; k < n; ++k) coords[k] = gen_cols(k, i);
        Rat value = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                value += coords[a] * gram_q(a, b) * coords[b];
        g.generators.push_back(std::move(coords));
        if (form == DiscriminantForm::quadratic)
            g.q_values.push_back(mod_two(value));
        else
            g.b_values.push_back(mod_one(value));
    }
    return g;
}

std::pair<Int, std::pair<std::size_t, std::size_t>> det_signature(
    const GramLattice& L) {
    return {L.det(), L.signature()};
}

Int divisibility(const LatticeVector& v) {
    if (v.is_zero()) throw zero_vector("divisibility of the zero vector");
    const IntMat& g = v.ambient().gram();
    Int gamma = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        Int dot = 0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * g(i, j);
        gamma = igcd(gamma, dot);
    }
    if (gamma == 0)
        throw internal_error("divisibility: vector orthogonal to the lattice");
    return gamma;
}

PrimitivePart primitive_part(const LatticeVector& v) {
    if (v.is_zero()) throw zero_vector("primitive part of the zero vector");
    Int d = v.content();
    std::vector<Int> c(v.coords());
    for (Int& x : c) x = exact_div(x, d);
    return PrimitivePart{d, LatticeVector(v.ambient(), std::move(c))};
}

LatticeVector orthogonal_complement_rank2(const GramLattice& n,
                                          const LatticeVector& h) {
    if (n.rank() != 2)
        throw invalid_input("orthogonal complement: lattice must have rank 2");
    if (!(h.ambient() == n))
        throw invalid_input("orthogonal complement: vector not in the lattice");
    if (!h.is_primitive())
        throw invalid_input("orthogonal complement: vector must be primitive");
    if (h.squared() == 0)
        throw invalid_input("orthogonal complement: isotropic vector");
    // f solves (G h) . f = 0 for the functional G h = (p, q).
    const IntMat& g = n.gram();
    Int p = g(0, 0) * h[0] + g(0, 1) * h[1];
    Int q = g(1, 0) * h[0] + g(1, 1) * h[1];
    Int c = igcd(p, q);
    std::vector<Int> f{exact_div(q, c), exact_div(-p, c)};
    if (f[0] < 0 || (f[0] == 0 && f[1] < 0)) {
        f[0] = -f[0];
        f[1] = -f[1];
    }
    return LatticeVector(n, std::move(f));
}

namespace {

// Depth-first enumeration of coordinates in the order 0, 1, -1, 2, -2, ...
bool enumerate_box(const GramLattice& L, const std::vector<Int>& bounds,
                   std::vector<Int>& coords, std::size_t depth,
                   const Int& target, std::optional<LatticeVector>& out) {
    if (depth == bounds.size()) {
        LatticeVector v(L, coords);
        if (v.squared() == target) {
            out = std::move(v);
            return true;
        }
        return false;
    }
    for (Int a = 0; a <= bounds[depth]; ++a) {
        coords[depth] = a;
        if (enumerate_box(L, bounds, coords, depth + 1, target, out))
            return true;
        if (a != 0) {
            coords[depth] = -a;
            if (enumerate_box(L, bounds, coords, depth + 1, target, out))
                return true;
        }
    }
    coords[depth] = 0;
    return false;
}

}  // namespace

std::optional<LatticeVector> definite_represents(const GramLattice& L,
                                                 const Int& target) {
    if (!L.is_positive_definite() && !L.is_negative_definite())
        throw indefinite_lattice("definite_represents needs a definite lattice");
    const bool positive = L.is_positive_definite();
    if (target == 0)
        return LatticeVector(L, std::vector<Int>(L.rank(), 0));
    if ((target > 0) != positive) return std::nullopt;

    // Cauchy-Schwarz in the definite space: the i-th coordinate of v is
    // v . e_i^*, so x_i^2 <= |v^2| |e_i^{*2}| = |target| |G^{-1}_{ii}|.
    RatMat inv = rat_inverse(L.gram());
    std::vector<Int> bounds(L.rank());
    for (std::size_t i = 0; i < L.rank(); ++i) {
        Rat b = abs(Rat(target)) * abs(inv(i, i));
        bounds[i] = isqrt(numerator(b) / denominator(b));
    }
    std::vector<Int> coords(L.rank(), 0);
    std::optional<LatticeVector> out;
    enumerate_box(L, bounds, coords, 0, target, out);
    return out;
}

RationalVector reflection_in_vector(const RationalVector& x,
                                    const LatticeVector& h) {
    const Int h2 = h.squared();
    if (h2 == 0) throw isotropic_mirror("reflection mirror must have H^2 != 0");
    const RationalVector hq = RationalVector::from(h);
    const Rat factor = Rat(2) * x.dot(hq) / Rat(h2);
    std::vector<Rat> c(x.coords());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= factor * hq[i];
    return RationalVector(x.ambient(), std::move(c));
}

}  // namespace k3corr
