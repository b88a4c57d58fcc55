#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3corr/matrix.hpp"
#include "k3corr/numeric.hpp"

namespace k3corr {

// A non-degenerate integral symmetric bilinear form, given by its Gram
// matrix in a fixed basis.  Determinant and signature are computed exactly
// at construction; degenerate input (det = 0) is rejected.
class GramLattice {
  public:
    explicit GramLattice(IntMat gram, std::vector<std::string> labels = {});

    std::size_t rank() const { return gram_.rows(); }
    const IntMat& gram() const { return gram_; }
    const Int& det() const { return det_; }
    // (p, n) with p + n = rank, via exact rational congruence diagonalization.
    std::pair<std::size_t, std::size_t> signature() const { return signature_; }
    bool is_even() const { return even_; }
    bool is_positive_definite() const { return signature_.second == 0; }
    bool is_negative_definite() const { return signature_.first == 0; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool operator==(const GramLattice& o) const { return gram_ == o.gram_; }

  private:
    IntMat gram_;
    std::vector<std::string> labels_;
    Int det_;
    std::pair<std::size_t, std::size_t> signature_;
    bool even_;
};

// An element of a GramLattice in its Gram basis.  Holds a pointer to the
// ambient lattice, which must outlive the vector.
class LatticeVector {
  public:
    LatticeVector(const GramLattice& ambient, std::vector<Int> coords);

    const GramLattice& ambient() const { return *ambient_; }
    const std::vector<Int>& coords() const { return coords_; }
    std::size_t size() const { return coords_.size(); }
    const Int& operator[](std::size_t i) const { return coords_[i]; }

    Int dot(const LatticeVector& o) const;
    Int squared() const { return dot(*this); }
    bool is_zero() const;
    // gcd of coordinates; 0 for the zero vector.
    Int content() const;
    bool is_primitive() const { return content() == 1; }

    LatticeVector operator+(const LatticeVector& o) const;
    LatticeVector operator-() const;
    LatticeVector scaled(const Int& f) const;
    bool operator==(const LatticeVector& o) const;

  private:
    const GramLattice* ambient_;
    std::vector<Int> coords_;
};

// Element of L (x) Q in the Gram basis of L.
class RationalVector {
  public:
    RationalVector(const GramLattice& ambient, std::vector<Rat> coords);
    static RationalVector from(const LatticeVector& v);

    const GramLattice& ambient() const { return *ambient_; }
    const std::vector<Rat>& coords() const { return coords_; }
    const Rat& operator[](std::size_t i) const { return coords_[i]; }

    Rat dot(const RationalVector& o) const;
    Rat squared() const { return dot(*this); }
    bool operator==(const RationalVector& o) const;

  private:
    const GramLattice* ambient_;
    std::vector<Rat> coords_;
};

// U * M * V = D with U, V unimodular and D = diag(d_1, ..., d_n),
// d_i >= 0 and d_i | d_{i+1}.
struct SmithResult {
    IntMat u, d, v;
    std::vector<Int> diagonal() const;
};
SmithResult smith_normal_form(const IntMat& m);

// A_L = L*/L.  Invariant factors ascending, units retained; one generator
// (coordinates in the Gram basis, i.e. an element of L (x) Q) per nonunit
// factor.  q_values are q_L(g) in [0, 2) for even L; b_values are b_L(g, g)
// in [0, 1) and are filled only by the bilinear variant.
struct DiscriminantGroup {
    std::vector<Int> invariant_factors;
    std::vector<std::vector<Rat>> generators;
    std::vector<Rat> q_values;
    std::vector<Rat> b_values;

    // l(A_L): minimal number of generators.
    std::size_t length() const;
    Int order() const;
};

enum class DiscriminantForm { quadratic, bilinear };

// Throws odd_lattice for odd L unless the bilinear form values are
// explicitly requested.
DiscriminantGroup discriminant_group(
    const GramLattice& L, DiscriminantForm form = DiscriminantForm::quadratic);

std::pair<Int, std::pair<std::size_t, std::size_t>> det_signature(
    const GramLattice& L);

// gamma(v): positive generator of v . L, i.e. gcd of v against the basis.
Int divisibility(const LatticeVector& v);

struct PrimitivePart {
    Int d;
    LatticeVector primitive;
};
PrimitivePart primitive_part(const LatticeVector& v);

// Primitive generator of the orthogonal complement of h in a rank-2 lattice;
// sign convention: first nonzero coordinate positive.
LatticeVector orthogonal_complement_rank2(const GramLattice& n,
                                          const LatticeVector& h);

// Complete decision: does the definite lattice L represent target?
// Exhaustive enumeration inside the exact dual-diagonal ellipsoid bound.
std::optional<LatticeVector> definite_represents(const GramLattice& L,
                                                 const Int& target);

// s_H(x) = x - 2 (x . H) H / H^2; requires H^2 != 0.
RationalVector reflection_in_vector(const RationalVector& x,
                                    const LatticeVector& h);

}  // namespace k3corr
