#include "k3corr/matrix.hpp"

namespace k3corr {

Int det_bareiss(IntMat m) {
    if (m.rows() != m.cols()) throw internal_error("det of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    Int d = m(n - 1, n - 1);
    return sign < 0 ? Int(-d) : d;
}

RatMat to_rational(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

RatMat rat_inverse(const IntMat& m) {
    if (m.rows() != m.cols()) throw internal_error("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMat a = to_rational(m);
    RatMat inv = RatMat::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a(piv, k) == 0) ++piv;
        if (piv == n) throw degenerate_lattice("singular matrix has no inverse");
        if (piv != k) {
            a.swap_rows(k, piv);
            inv.swap_rows(k, piv);
        }
        const Rat p = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= p;
            inv(k, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            const Rat f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

}  // namespace k3corr
