#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "projbound/pair.hpp"
#include "projbound/svd.hpp"

namespace projbound {

/// The two deviations of interest: primal = ||P_B - P_A||_F^2 over column
/// spaces, dual = ||P_B* - P_A*||_F^2 over row spaces.
struct DeviationPair {
    double primal;
    double dual;
};

inline DeviationPair deviation_exact(const PerturbationPair& pair) { return {pair.q.primal, pair.q.dual}; }

enum class IdentityId {
    exp_1_1,  // primal = ||U~1* U2||^2 + ||U~2* U1||^2
    exp_1_2,  // dual, V blocks
    exp_2_1,  // equal rank: primal = 2||U~1* U2||^2 = 2||U~2* U1||^2
    exp_2_2,  // equal rank, V blocks
    ide_1_1,  // primal, pseudoinverse form
    ide_1_2,  // dual, pseudoinverse form
    ide_2_1,  // equal rank, two-term pseudoinverse forms
    ide_2_2,
    cor_ide_primal,  // E~ = B^+ - A^+ form
    cor_ide_dual,
};

inline const char* to_string(IdentityId id) {
    switch (id) {
        case IdentityId::exp_1_1: return "EXP_1_1";
        case IdentityId::exp_1_2: return "EXP_1_2";
        case IdentityId::exp_2_1: return "EXP_2_1";
        case IdentityId::exp_2_2: return "EXP_2_2";
        case IdentityId::ide_1_1: return "IDE_1_1";
        case IdentityId::ide_1_2: return "IDE_1_2";
        case IdentityId::ide_2_1: return "IDE_2_1";
        case IdentityId::ide_2_2: return "IDE_2_2";
        case IdentityId::cor_ide_primal: return "COR_IDE_PRIMAL";
        case IdentityId::cor_ide_dual: return "COR_IDE_DUAL";
    }
    return "?";
}

/// One evaluated identity. Where an identity asserts several equivalent
/// expressions (the equal-rank two-term forms), rhs holds the expression
/// farthest from lhs, so abs_residual bounds the deviation of every form.
struct IdentityResidualReport {
    IdentityId identity_id;
    double lhs;
    double rhs;
    double abs_residual;  // |lhs - rhs|
    bool applicable;      // equal-rank identities require rank(A) == rank(B)
};

namespace detail {

inline IdentityResidualReport identity_report(IdentityId id, double lhs, std::initializer_list<double> forms,
                                              bool applicable) {
    double worst = lhs;
    double worst_gap = -1.0;
    for (double f : forms) {
        const double gap = std::abs(lhs - f);
        if (gap > worst_gap) {
            worst_gap = gap;
            worst = f;
        }
    }
    return IdentityResidualReport{id, lhs, worst, std::abs(lhs - worst), applicable};
}

}  // namespace detail

/// SVD block expressions for the deviations, general and equal-rank forms.
inline std::vector<IdentityResidualReport> svd_block_expressions(const PerturbationPair& pair) {
    const std::size_t m = pair.m(), n = pair.n();
    const std::size_t r = pair.rank_a(), s = pair.rank_b();
    const ComplexMatrix& ua = pair.svd_a.u;
    const ComplexMatrix& ub = pair.svd_b.u;
    const ComplexMatrix& va = pair.svd_a.v;
    const ComplexMatrix& vb = pair.svd_b.v;

    const double ub1_ua2 = adjoint_block_product_norm_sq(ub, 0, s, ua, r, m);
    const double ub2_ua1 = adjoint_block_product_norm_sq(ub, s, m, ua, 0, r);
    const double vb1_va2 = adjoint_block_product_norm_sq(vb, 0, s, va, r, n);
    const double vb2_va1 = adjoint_block_product_norm_sq(vb, s, n, va, 0, r);

    const bool eq = pair.equal_rank();
    std::vector<IdentityResidualReport> out;
    out.push_back(detail::identity_report(IdentityId::exp_1_1, pair.q.primal, {ub1_ua2 + ub2_ua1}, true));
    out.push_back(detail::identity_report(IdentityId::exp_1_2, pair.q.dual, {vb1_va2 + vb2_va1}, true));
    out.push_back(detail::identity_report(IdentityId::exp_2_1, pair.q.primal, {2.0 * ub1_ua2, 2.0 * ub2_ua1}, eq));
    out.push_back(detail::identity_report(IdentityId::exp_2_2, pair.q.dual, {2.0 * vb1_va2, 2.0 * vb2_va1}, eq));
    return out;
}

/// Pseudoinverse-only identities, free of the SVD block matrices.
inline std::vector<IdentityResidualReport> pseudoinverse_identities(const PerturbationPair& pair) {
    const PairQuantities& q = pair.q;
    const bool eq = pair.equal_rank();
    std::vector<IdentityResidualReport> out;
    out.push_back(detail::identity_report(
        IdentityId::ide_1_1, q.primal, {q.e_adag_f2 + q.e_bdag_f2 - q.pb_e_adag_f2 - q.pa_e_bdag_f2}, true));
    out.push_back(detail::identity_report(
        IdentityId::ide_1_2, q.dual, {q.adag_e_f2 + q.bdag_e_f2 - q.adag_e_pbs_f2 - q.bdag_e_pas_f2}, true));
    out.push_back(detail::identity_report(
        IdentityId::ide_2_1, q.primal,
        {2.0 * (q.e_adag_f2 - q.pb_e_adag_f2), 2.0 * (q.e_bdag_f2 - q.pa_e_bdag_f2)}, eq));
    out.push_back(detail::identity_report(
        IdentityId::ide_2_2, q.dual,
        {2.0 * (q.adag_e_f2 - q.adag_e_pbs_f2), 2.0 * (q.bdag_e_f2 - q.bdag_e_pas_f2)}, eq));
    return out;
}

/// E~-form identities; the equal-rank two-term forms are folded into the
/// same report rows when the ranks agree.
inline std::vector<IdentityResidualReport> pinv_difference_identities(const PerturbationPair& pair) {
    const PairQuantities& q = pair.q;
    const bool eq = pair.equal_rank();
    std::vector<IdentityResidualReport> out;

    std::vector<double> primal_forms{q.a_etld_f2 + q.b_etld_f2 - q.a_etld_pb_f2 - q.b_etld_pa_f2};
    std::vector<double> dual_forms{q.etld_a_f2 + q.etld_b_f2 - q.pbs_etld_a_f2 - q.pas_etld_b_f2};
    if (eq) {
        primal_forms.push_back(2.0 * (q.a_etld_f2 - q.a_etld_pb_f2));
        primal_forms.push_back(2.0 * (q.b_etld_f2 - q.b_etld_pa_f2));
        dual_forms.push_back(2.0 * (q.etld_a_f2 - q.pbs_etld_a_f2));
        dual_forms.push_back(2.0 * (q.etld_b_f2 - q.pas_etld_b_f2));
    }
    auto fold = [](IdentityId id, double lhs, const std::vector<double>& forms) {
        double worst = forms.front();
        for (double f : forms)
            if (std::abs(lhs - f) > std::abs(lhs - worst)) worst = f;
        return IdentityResidualReport{id, lhs, worst, std::abs(lhs - worst), true};
    };
    out.push_back(fold(IdentityId::cor_ide_primal, q.primal, primal_forms));
    out.push_back(fold(IdentityId::cor_ide_dual, q.dual, dual_forms));
    return out;
}

/// All ten identity rows in IdentityId order.
inline std::vector<IdentityResidualReport> all_identities(const PerturbationPair& pair) {
    std::vector<IdentityResidualReport> out = svd_block_expressions(pair);
    for (auto& r : pseudoinverse_identities(pair)) out.push_back(r);
    for (auto& r : pinv_difference_identities(pair)) out.push_back(r);
    return out;
}

struct TraceSandwich {
    double lower;
    double value;  // Re tr(MN)
    double upper;
};

/// tr(MN) bracketed by the sorted-spectra pairings. Inputs must be Hermitian
/// to 1e-12 in Frobenius norm; the sandwich itself is rechecked and a
/// violation (a broken eigensolver) throws.
inline TraceSandwich trace_inequality_check(const ComplexMatrix& m_mat, const ComplexMatrix& n_mat) {
    if (m_mat.rows() != m_mat.cols() || n_mat.rows() != n_mat.cols() || m_mat.rows() != n_mat.rows())
        throw std::invalid_argument("trace_inequality_check: matrices must be square and of equal order");
    const double herm_tol = 1e-12;
    if (frobenius_norm(m_mat - adjoint(m_mat)) > herm_tol || frobenius_norm(n_mat - adjoint(n_mat)) > herm_tol)
        throw std::invalid_argument("trace_inequality_check: input is not Hermitian within 1e-12");

    const std::vector<double> lam = hermitian_eigenvalues(m_mat);  // non-increasing
    const std::vector<double> mu = hermitian_eigenvalues(n_mat);
    const std::size_t order = lam.size();

    double lower = 0.0, upper = 0.0, magnitude = 0.0;
    for (std::size_t i = 0; i < order; ++i) {
        lower += lam[i] * mu[order - 1 - i];
        upper += lam[i] * mu[i];
        magnitude += std::abs(lam[i]) * std::abs(mu[i]);
    }
    const double value = trace(m_mat * n_mat).real();

    const double slack = 1e-9 * std::max(1.0, magnitude);
    if (value < lower - slack || value > upper + slack)
        throw std::logic_error("trace_inequality_check: sandwich violated beyond tolerance");
    return TraceSandwich{lower, value, upper};
}

}  // namespace projbound
