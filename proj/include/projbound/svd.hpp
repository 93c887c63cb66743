#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "projbound/matrix.hpp"

namespace projbound {

/// Rule that turns the largest singular value into the numerical-rank cutoff.
/// Precedence: absolute cutoff if set, else relative*sigma_1, else the default
/// max(m,n)*eps*sigma_1.
struct TolerancePolicy {
    double absolute = -1.0;
    double relative = -1.0;

    double resolve(std::size_t m, std::size_t n, double sigma1) const {
        if (absolute >= 0.0) return absolute;
        if (relative >= 0.0) return relative * sigma1;
        return static_cast<double>(std::max(m, n)) * std::numeric_limits<double>::epsilon() * sigma1;
    }
};

/// Thrown when the Jacobi iteration fails to reach the orthogonality
/// threshold; carries the number of sweeps performed.
class SvdError : public std::runtime_error {
public:
    SvdError(const std::string& what, int sweeps)
        : std::runtime_error(what + " (after " + std::to_string(sweeps) + " sweeps)"), sweeps_(sweeps) {}
    int sweeps() const { return sweeps_; }

private:
    int sweeps_;
};

/// Full SVD M = U diag(sigma) V^* with U (m x m) and V (n x n) unitary,
/// singular values sorted non-increasing, and a numerical-rank split:
/// columns [0, rank) of U and V span the column/row spaces.
struct SvdFactorization {
    ComplexMatrix u;
    std::vector<double> singular_values;  // length min(m,n)
    ComplexMatrix v;
    std::size_t rank = 0;
    double tolerance = 0.0;

    std::size_t m() const { return u.rows(); }
    std::size_t n() const { return v.rows(); }
    double sigma_max() const { return singular_values.empty() ? 0.0 : singular_values.front(); }
    /// Smallest singular value counted in the rank (0 when rank is 0).
    double sigma_min_pos() const { return rank == 0 ? 0.0 : singular_values[rank - 1]; }
};

namespace detail {

// Complete the first `have` orthonormal columns of q to a full basis using
// canonical vectors, picking the candidate with the largest residual each
// round and re-orthogonalizing once.
inline void complete_orthonormal_basis(ComplexMatrix& q, std::size_t have) {
    const std::size_t m = q.rows();
    std::vector<bool> used(m, false);
    for (std::size_t col = have; col < m; ++col) {
        std::size_t best = m;
        double best_norm_sq = -1.0;
        std::vector<Complex> best_res;
        for (std::size_t t = 0; t < m; ++t) {
            if (used[t]) continue;
            std::vector<Complex> res(m, Complex(0.0, 0.0));
            res[t] = 1.0;
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t c = 0; c < col; ++c) {
                    Complex dot(0.0, 0.0);
                    for (std::size_t i = 0; i < m; ++i) dot += std::conj(q(i, c)) * res[i];
                    for (std::size_t i = 0; i < m; ++i) res[i] -= dot * q(i, c);
                }
            double nsq = 0.0;
            for (const Complex& z : res) nsq += std::norm(z);
            if (nsq > best_norm_sq) {
                best_norm_sq = nsq;
                best = t;
                best_res = std::move(res);
            }
        }
        used[best] = true;
        const double nrm = std::sqrt(best_norm_sq);
        for (std::size_t i = 0; i < m; ++i) q(i, col) = best_res[i] / nrm;
    }
}

}  // namespace detail

/**
 * One-sided Jacobi SVD.
 *
 * The columns of M (transposed first if m < n) are orthogonalized by complex
 * plane rotations until every pair satisfies |u_p^* u_q| <= thresh*|u_p||u_q|.
 * Column norms then give the singular values; this classic scheme computes
 * small singular values with high relative accuracy, which matters here
 * because pseudoinverse-heavy quantities are evaluated near rank deficiency.
 *
 * max_sweeps exists to make the failure mode explicit: if the cyclic sweeps
 * do not converge an SvdError carrying the sweep count is thrown instead of
 * returning garbage.
 */
inline SvdFactorization svd(const ComplexMatrix& mat, TolerancePolicy policy = {}, int max_sweeps = 64) {
    if (!mat.is_finite()) throw std::invalid_argument("svd: matrix has non-finite entries");
    if (mat.rows() < mat.cols()) {
        SvdFactorization f = svd(adjoint(mat), policy, max_sweeps);
        return SvdFactorization{std::move(f.v), std::move(f.singular_values), std::move(f.u), f.rank, f.tolerance};
    }

    const std::size_t m = mat.rows();
    const std::size_t n = mat.cols();
    ComplexMatrix w = mat;  // columns rotated in place
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double thresh = std::sqrt(static_cast<double>(m)) * std::numeric_limits<double>::epsilon();
    int sweeps = 0;
    bool changed = n > 1;
    while (changed) {
        if (sweeps >= max_sweeps) throw SvdError("svd: Jacobi sweeps did not converge", sweeps);
        ++sweeps;
        changed = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq(0.0, 0.0);
                for (std::size_t i = 0; i < m; ++i) {
                    app += std::norm(w(i, p));
                    aqq += std::norm(w(i, q));
                    apq += std::conj(w(i, p)) * w(i, q);
                }
                const double mag = std::abs(apq);
                if (mag <= thresh * std::sqrt(app * aqq) || mag == 0.0) continue;
                changed = true;

                // Phase-align column q, then apply the real Jacobi rotation
                // that zeroes the 2x2 off-diagonal Gram entry.
                const Complex phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;
                const Complex phc = std::conj(phase);
                for (std::size_t i = 0; i < m; ++i) {
                    const Complex wp = w(i, p), wq = w(i, q);
                    w(i, p) = cs * wp - sn * (phc * wq);
                    w(i, q) = sn * (phase * wp) + cs * wq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vp = v(i, p), vq = v(i, q);
                    v(i, p) = cs * vp - sn * (phc * vq);
                    v(i, q) = sn * (phase * vp) + cs * vq;
                }
            }
        }
    }

    std::vector<double> sigma(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(w(i, j));
        sigma[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

    std::vector<double> sorted_sigma(n);
    ComplexMatrix u(m, m);
    ComplexMatrix v_sorted(n, n);
    std::size_t positive = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        sorted_sigma[j] = sigma[src];
        for (std::size_t i = 0; i < n; ++i) v_sorted(i, j) = v(i, src);
        if (sigma[src] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) u(i, j) = w(i, src) / sigma[src];
            positive = j + 1;
        }
    }
    // Zero-norm columns and the tail beyond n need an orthonormal fill.
    detail::complete_orthonormal_basis(u, positive);

    SvdFactorization f{std::move(u), std::move(sorted_sigma), std::move(v_sorted), 0, 0.0};
    f.tolerance = policy.resolve(m, n, f.sigma_max());
    f.rank = static_cast<std::size_t>(
        std::count_if(f.singular_values.begin(), f.singular_values.end(),
                      [&](double s) { return s > f.tolerance; }));
    return f;
}

/// Largest singular value.
inline double spectral_norm(const ComplexMatrix& mat) { return svd(mat).sigma_max(); }

inline std::size_t numerical_rank(const ComplexMatrix& mat, TolerancePolicy policy = {}) {
    return svd(mat, policy).rank;
}

/**
 * Eigenvalues of a Hermitian matrix by the classical two-sided Jacobi
 * iteration, returned sorted non-increasing. Input Hermitian-ness is the
 * caller's responsibility; the iteration works on the Hermitian part.
 */
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& mat, int max_sweeps = 64) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
    const std::size_t n = mat.rows();
    ComplexMatrix h = mat;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(h(i, j)));
    const double thresh = scale * static_cast<double>(n) * std::numeric_limits<double>::epsilon();

    int sweeps = 0;
    bool changed = n > 1;
    while (changed) {
        if (sweeps >= max_sweeps) throw SvdError("hermitian_eigenvalues: Jacobi sweeps did not converge", sweeps);
        ++sweeps;
        changed = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex hpq = h(p, q);
                const double mag = std::abs(hpq);
                if (mag <= thresh || mag == 0.0) continue;
                changed = true;
                const Complex phase = hpq / mag;
                const double tau = (h(q, q).real() - h(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;
                const Complex phc = std::conj(phase);
                // H <- J^* H J with J acting on the (p,q) plane.
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex hip = h(i, p), hiq = h(i, q);
                    h(i, p) = cs * hip - sn * (phc * hiq);
                    h(i, q) = sn * (phase * hip) + cs * hiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex hpj = h(p, j), hqj = h(q, j);
                    h(p, j) = cs * hpj - sn * (phase * hqj);
                    h(q, j) = sn * (phc * hpj) + cs * hqj;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = h(i, i).real();
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

}  // namespace projbound
