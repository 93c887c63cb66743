#pragma once

#include <cstddef>

#include "projbound/matrix.hpp"
#include "projbound/pinv.hpp"
#include "projbound/svd.hpp"

namespace projbound {

/// Squared Frobenius norms of every matrix product the identities and bounds
/// consume, plus squared spectral norms and the exact deviations. Computed
/// once per pair; bound evaluation never refactorizes.
///
/// Token key: adag = A^+, bdag = B^+, etld = B^+ - A^+, pa = A A^+,
/// pb = B B^+, pas = A^+ A, pbs = B^+ B, _f2 = squared Frobenius norm.
struct PairQuantities {
    double a_spec2 = 0.0, b_spec2 = 0.0;        // ||A||_2^2, ||B||_2^2
    double adag_spec2 = 0.0, bdag_spec2 = 0.0;  // ||A^+||_2^2, ||B^+||_2^2 (0 for rank-0 input)

    double e_f2 = 0.0, etld_f2 = 0.0;

    double e_adag_f2 = 0.0, e_bdag_f2 = 0.0, adag_e_f2 = 0.0, bdag_e_f2 = 0.0;
    double pb_e_adag_f2 = 0.0, pa_e_bdag_f2 = 0.0, adag_e_pbs_f2 = 0.0, bdag_e_pas_f2 = 0.0;
    double bdag_e_adag_f2 = 0.0, adag_e_bdag_f2 = 0.0;

    double a_etld_f2 = 0.0, b_etld_f2 = 0.0, etld_a_f2 = 0.0, etld_b_f2 = 0.0;
    double a_etld_pb_f2 = 0.0, b_etld_pa_f2 = 0.0, pbs_etld_a_f2 = 0.0, pas_etld_b_f2 = 0.0;
    double b_etld_a_f2 = 0.0, a_etld_b_f2 = 0.0;

    double pb_e_f2 = 0.0, pa_e_f2 = 0.0, etld_pb_f2 = 0.0, etld_pa_f2 = 0.0;
    double e_pas_f2 = 0.0, e_pbs_f2 = 0.0, pas_etld_f2 = 0.0, pbs_etld_f2 = 0.0;

    double primal = 0.0;  // ||P_B - P_A||_F^2
    double dual = 0.0;    // ||P_B* - P_A*||_F^2
};

/// A perturbed matrix pair with every derived object cached eagerly: SVDs,
/// pseudoinverses, E = B - A, E~ = B^+ - A^+, the four projectors, and the
/// scalar quantities above. Immutable after construction and safe to share
/// across threads.
struct PerturbationPair {
    ComplexMatrix a, b;
    SvdFactorization svd_a, svd_b;
    ComplexMatrix pinv_a, pinv_b;
    ComplexMatrix e;         // B - A
    ComplexMatrix e_tilde;   // B^+ - A^+
    ComplexMatrix p_a, p_b;  // m x m column-space projectors
    ComplexMatrix p_a_star, p_b_star;  // n x n row-space projectors
    PairQuantities q;

    std::size_t m() const { return a.rows(); }
    std::size_t n() const { return a.cols(); }
    std::size_t rank_a() const { return svd_a.rank; }
    std::size_t rank_b() const { return svd_b.rank; }
    bool equal_rank() const { return svd_a.rank == svd_b.rank; }
    bool a_is_zero() const { return svd_a.rank == 0; }
    bool b_is_zero() const { return svd_b.rank == 0; }
};

inline PerturbationPair make_pair(const ComplexMatrix& a, const ComplexMatrix& b, TolerancePolicy policy = {}) {
    if (!a.same_shape(b)) throw std::invalid_argument("make_pair: shape mismatch between A and B");

    SvdFactorization svd_a = svd(a, policy);
    SvdFactorization svd_b = svd(b, policy);

    ComplexMatrix pinv_a = pinv(svd_a);
    ComplexMatrix pinv_b = pinv(svd_b);
    ComplexMatrix e = b - a;
    ComplexMatrix e_tilde = pinv_b - pinv_a;
    ComplexMatrix p_a = projector(svd_a);
    ComplexMatrix p_b = projector(svd_b);
    ComplexMatrix p_a_star = row_space_projector(svd_a);
    ComplexMatrix p_b_star = row_space_projector(svd_b);

    PairQuantities q;
    q.a_spec2 = svd_a.sigma_max() * svd_a.sigma_max();
    q.b_spec2 = svd_b.sigma_max() * svd_b.sigma_max();
    const double sa = svd_a.sigma_min_pos();
    const double sb = svd_b.sigma_min_pos();
    q.adag_spec2 = sa > 0.0 ? 1.0 / (sa * sa) : 0.0;
    q.bdag_spec2 = sb > 0.0 ? 1.0 / (sb * sb) : 0.0;

    q.e_f2 = frobenius_norm_sq(e);
    q.etld_f2 = frobenius_norm_sq(e_tilde);

    const ComplexMatrix e_adag = e * pinv_a;
    const ComplexMatrix e_bdag = e * pinv_b;
    const ComplexMatrix adag_e = pinv_a * e;
    const ComplexMatrix bdag_e = pinv_b * e;
    q.e_adag_f2 = frobenius_norm_sq(e_adag);
    q.e_bdag_f2 = frobenius_norm_sq(e_bdag);
    q.adag_e_f2 = frobenius_norm_sq(adag_e);
    q.bdag_e_f2 = frobenius_norm_sq(bdag_e);
    q.pb_e_adag_f2 = frobenius_norm_sq(p_b * e_adag);
    q.pa_e_bdag_f2 = frobenius_norm_sq(p_a * e_bdag);
    q.adag_e_pbs_f2 = frobenius_norm_sq(adag_e * p_b_star);
    q.bdag_e_pas_f2 = frobenius_norm_sq(bdag_e * p_a_star);
    q.bdag_e_adag_f2 = frobenius_norm_sq(bdag_e * pinv_a);
    q.adag_e_bdag_f2 = frobenius_norm_sq(adag_e * pinv_b);

    const ComplexMatrix a_etld = a * e_tilde;
    const ComplexMatrix b_etld = b * e_tilde;
    const ComplexMatrix etld_a = e_tilde * a;
    const ComplexMatrix etld_b = e_tilde * b;
    q.a_etld_f2 = frobenius_norm_sq(a_etld);
    q.b_etld_f2 = frobenius_norm_sq(b_etld);
    q.etld_a_f2 = frobenius_norm_sq(etld_a);
    q.etld_b_f2 = frobenius_norm_sq(etld_b);
    q.a_etld_pb_f2 = frobenius_norm_sq(a_etld * p_b);
    q.b_etld_pa_f2 = frobenius_norm_sq(b_etld * p_a);
    q.pbs_etld_a_f2 = frobenius_norm_sq(p_b_star * etld_a);
    q.pas_etld_b_f2 = frobenius_norm_sq(p_a_star * etld_b);
    q.b_etld_a_f2 = frobenius_norm_sq(b_etld * a);
    q.a_etld_b_f2 = frobenius_norm_sq(a_etld * b);

    q.pb_e_f2 = frobenius_norm_sq(p_b * e);
    q.pa_e_f2 = frobenius_norm_sq(p_a * e);
    q.etld_pb_f2 = frobenius_norm_sq(e_tilde * p_b);
    q.etld_pa_f2 = frobenius_norm_sq(e_tilde * p_a);
    q.e_pas_f2 = frobenius_norm_sq(e * p_a_star);
    q.e_pbs_f2 = frobenius_norm_sq(e * p_b_star);
    q.pas_etld_f2 = frobenius_norm_sq(p_a_star * e_tilde);
    q.pbs_etld_f2 = frobenius_norm_sq(p_b_star * e_tilde);

    q.primal = frobenius_norm_sq(p_b - p_a);
    q.dual = frobenius_norm_sq(p_b_star - p_a_star);

    return PerturbationPair{a,
                            b,
                            std::move(svd_a),
                            std::move(svd_b),
                            std::move(pinv_a),
                            std::move(pinv_b),
                            std::move(e),
                            std::move(e_tilde),
                            std::move(p_a),
                            std::move(p_b),
                            std::move(p_a_star),
                            std::move(p_b_star),
                            q};
}

}  // namespace projbound
