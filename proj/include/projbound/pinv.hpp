#pragma once

#include <cstddef>

#include "projbound/matrix.hpp"
#include "projbound/svd.hpp"

namespace projbound {

/// Moore-Penrose inverse V1 Sigma1^-1 U1^* from a factorization; the rank-0
/// case yields the n x m zero matrix.
inline ComplexMatrix pinv(const SvdFactorization& f) {
    const std::size_t m = f.m(), n = f.n();
    ComplexMatrix out(n, m);
    for (std::size_t k = 0; k < f.rank; ++k) {
        const double inv_sigma = 1.0 / f.singular_values[k];
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = f.v(i, k) * inv_sigma;
            for (std::size_t j = 0; j < m; ++j) out(i, j) += vik * std::conj(f.u(j, k));
        }
    }
    return out;
}

inline ComplexMatrix pinv(const ComplexMatrix& mat, TolerancePolicy policy = {}) {
    return pinv(svd(mat, policy));
}

namespace detail {

// Gram projector X1 X1^* over the first `rank` columns, Hermitized so the
// symmetry invariant holds exactly.
inline ComplexMatrix gram_projector(const ComplexMatrix& x, std::size_t rank) {
    const std::size_t m = x.rows();
    ComplexMatrix p(m, m);
    for (std::size_t k = 0; k < rank; ++k)
        for (std::size_t i = 0; i < m; ++i) {
            const Complex xik = x(i, k);
            for (std::size_t j = 0; j < m; ++j) p(i, j) += xik * std::conj(x(j, k));
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Complex avg = 0.5 * (p(i, j) + std::conj(p(j, i)));
            p(i, j) = avg;
            p(j, i) = std::conj(avg);
        }
    for (std::size_t i = 0; i < m; ++i) p(i, i) = Complex(p(i, i).real(), 0.0);
    return p;
}

}  // namespace detail

/// Orthogonal projector P_M = M M^+ onto the column space, evaluated as
/// U1 U1^* so it is Hermitian and idempotent to rounding error even when M is
/// ill conditioned.
inline ComplexMatrix projector(const SvdFactorization& f) { return detail::gram_projector(f.u, f.rank); }

inline ComplexMatrix projector(const ComplexMatrix& mat, TolerancePolicy policy = {}) {
    return projector(svd(mat, policy));
}

/// Projector P_{M^*} = M^+ M onto the row space (V1 V1^*).
inline ComplexMatrix row_space_projector(const SvdFactorization& f) { return detail::gram_projector(f.v, f.rank); }

}  // namespace projbound
