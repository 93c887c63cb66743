#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "projbound/pair.hpp"

namespace projbound {

enum class BoundKind { upper, lower };
enum class BoundTarget { primal, combined };

inline const char* to_string(BoundKind k) { return k == BoundKind::upper ? "UPPER" : "LOWER"; }
inline const char* to_string(BoundTarget t) { return t == BoundTarget::primal ? "PRIMAL" : "COMBINED"; }

/// Catalog of every evaluated estimate, classical and new.
enum class BoundId {
    sun_up,
    sun_up_eqrank,
    chen_up,
    chen_up_eqrank,
    li_up,
    li_up_eqrank,
    rank_low,
    rank_up,
    new_up1,
    new_up1_eqrank,
    new_up2,
    new_up2_eqrank,
    new_up3,
    new_up3_eqrank,
    new_low1,
    new_low1_eqrank,
    new_low2,
    new_low2_eqrank,
    new_low3,
    new_low3_eqrank,
    chen_comb1,
    chen_comb2,
    chen_comb3,
    li_comb1,
    li_comb2,
    comb_up_weighted,
    comb_up_sum,
    comb_up_eqrank_1,
    comb_up_eqrank_2,
    corup_1_1,
    corup_1_2,
    corup_2_1,
    corup_2_2,
    comb_low_weighted,
    comb_low_sum,
    comb_low_eqrank_1,
    comb_low_eqrank_2,
    corlow_1_1,
    corlow_1_2,
    corlow_2_1,
    corlow_2_2,
};

inline const char* to_string(BoundId id) {
    switch (id) {
        case BoundId::sun_up: return "SUN_UP";
        case BoundId::sun_up_eqrank: return "SUN_UP_EQRANK";
        case BoundId::chen_up: return "CHEN_UP";
        case BoundId::chen_up_eqrank: return "CHEN_UP_EQRANK";
        case BoundId::li_up: return "LI_UP";
        case BoundId::li_up_eqrank: return "LI_UP_EQRANK";
        case BoundId::rank_low: return "RANK_LOW";
        case BoundId::rank_up: return "RANK_UP";
        case BoundId::new_up1: return "NEW_UP1";
        case BoundId::new_up1_eqrank: return "NEW_UP1_EQRANK";
        case BoundId::new_up2: return "NEW_UP2";
        case BoundId::new_up2_eqrank: return "NEW_UP2_EQRANK";
        case BoundId::new_up3: return "NEW_UP3";
        case BoundId::new_up3_eqrank: return "NEW_UP3_EQRANK";
        case BoundId::new_low1: return "NEW_LOW1";
        case BoundId::new_low1_eqrank: return "NEW_LOW1_EQRANK";
        case BoundId::new_low2: return "NEW_LOW2";
        case BoundId::new_low2_eqrank: return "NEW_LOW2_EQRANK";
        case BoundId::new_low3: return "NEW_LOW3";
        case BoundId::new_low3_eqrank: return "NEW_LOW3_EQRANK";
        case BoundId::chen_comb1: return "CHEN_COMB1";
        case BoundId::chen_comb2: return "CHEN_COMB2";
        case BoundId::chen_comb3: return "CHEN_COMB3";
        case BoundId::li_comb1: return "LI_COMB1";
        case BoundId::li_comb2: return "LI_COMB2";
        case BoundId::comb_up_weighted: return "COMB_UP_WEIGHTED";
        case BoundId::comb_up_sum: return "COMB_UP_SUM";
        case BoundId::comb_up_eqrank_1: return "COMB_UP_EQRANK_1";
        case BoundId::comb_up_eqrank_2: return "COMB_UP_EQRANK_2";
        case BoundId::corup_1_1: return "CORUP_1_1";
        case BoundId::corup_1_2: return "CORUP_1_2";
        case BoundId::corup_2_1: return "CORUP_2_1";
        case BoundId::corup_2_2: return "CORUP_2_2";
        case BoundId::comb_low_weighted: return "COMB_LOW_WEIGHTED";
        case BoundId::comb_low_sum: return "COMB_LOW_SUM";
        case BoundId::comb_low_eqrank_1: return "COMB_LOW_EQRANK_1";
        case BoundId::comb_low_eqrank_2: return "COMB_LOW_EQRANK_2";
        case BoundId::corlow_1_1: return "CORLOW_1_1";
        case BoundId::corlow_1_2: return "CORLOW_1_2";
        case BoundId::corlow_2_1: return "CORLOW_2_1";
        case BoundId::corlow_2_2: return "CORLOW_2_2";
    }
    return "?";
}

/// Weights of the combined target w_primal*primal + w_dual*dual.
struct CombinedWeights {
    double w_primal;
    double w_dual;
};

/// Parameters of the combined families; each must lie in [0, 1].
/// lambda/mu drive the upper family, xi/eta the lower one.
class CombinedParams {
public:
    CombinedParams(double lambda, double mu, double xi, double eta)
        : lambda_(checked(lambda, "lambda")), mu_(checked(mu, "mu")), xi_(checked(xi, "xi")),
          eta_(checked(eta, "eta")) {}

    double lambda() const { return lambda_; }
    double mu() const { return mu_; }
    double xi() const { return xi_; }
    double eta() const { return eta_; }

private:
    static double checked(double t, const char* name) {
        if (!(t >= 0.0 && t <= 1.0))
            throw std::invalid_argument(std::string("CombinedParams: ") + name + " must lie in [0,1]");
        return t;
    }
    double lambda_, mu_, xi_, eta_;
};

struct BoundRecord {
    BoundId bound_id;
    BoundKind kind;
    BoundTarget target;
    std::optional<CombinedWeights> combined_weights;  // present iff target == combined
    double value = std::numeric_limits<double>::quiet_NaN();
    bool applicable = false;
    std::string inapplicability_reason;            // empty when applicable
    std::optional<CombinedParams> params;          // set for the parameterized families
};

/// exact value of the quantity a record bounds.
inline double exact_target(const BoundRecord& rec, double primal, double dual) {
    if (rec.target == BoundTarget::primal) return primal;
    return rec.combined_weights->w_primal * primal + rec.combined_weights->w_dual * dual;
}

/// Signed slack: non-negative when the record brackets the exact value.
inline double sandwich_slack(const BoundRecord& rec, double primal, double dual) {
    const double target = exact_target(rec, primal, dual);
    return rec.kind == BoundKind::upper ? rec.value - target : target - rec.value;
}

inline bool sandwich_ok(const BoundRecord& rec, double primal, double dual, double tol = 1e-9) {
    if (!rec.applicable) return true;  // not asserted
    const double target = exact_target(rec, primal, dual);
    return sandwich_slack(rec, primal, dual) >= -tol * std::max(1.0, target);
}

struct BoundOptions {
    bool force_general_rank = false;  // mark equal-rank records inapplicable even when ranks agree
};

/// The scalar coefficients the sharper bounds are assembled from: alpha pairs
/// for the pseudoinverse-product route, beta pairs for the direct route,
/// gamma pairs for its projected variant, each with a primed lower-bound
/// analog. All non-negative; the parenthesized differences are non-negative
/// by construction and are clamped at zero against rounding.
struct AuxiliaryQuantities {
    double alpha1 = 0.0, alpha2 = 0.0;              // upper, pseudoinverse-product form
    double alpha1_prime = 0.0, alpha2_prime = 0.0;  // lower analogs
    double beta1 = 0.0, beta2 = 0.0;
    double beta1_prime = 0.0, beta2_prime = 0.0;
    double gamma1 = 0.0, gamma2 = 0.0;
    double gamma1_prime = 0.0, gamma2_prime = 0.0;
};

namespace detail {

inline double clamp0(double x) { return x > 0.0 ? x : 0.0; }

inline std::string zero_reason(const PerturbationPair& pair) {
    if (pair.a_is_zero() && pair.b_is_zero()) return "A and B have numerical rank 0";
    if (pair.a_is_zero()) return "A has numerical rank 0";
    return "B has numerical rank 0";
}

inline BoundRecord primal_record(BoundId id, BoundKind kind, double value, bool applicable,
                                 std::string reason = {}) {
    BoundRecord r;
    r.bound_id = id;
    r.kind = kind;
    r.target = BoundTarget::primal;
    r.value = value;
    r.applicable = applicable;
    r.inapplicability_reason = std::move(reason);
    return r;
}

inline BoundRecord combined_record(BoundId id, BoundKind kind, CombinedWeights w, double value, bool applicable,
                                   std::string reason = {}, std::optional<CombinedParams> params = {}) {
    BoundRecord r;
    r.bound_id = id;
    r.kind = kind;
    r.target = BoundTarget::combined;
    r.combined_weights = w;
    r.value = value;
    r.applicable = applicable;
    r.inapplicability_reason = std::move(reason);
    r.params = params;
    return r;
}

struct Applicability {
    bool general;
    bool eqrank;
    std::string general_reason;
    std::string eqrank_reason;
};

inline Applicability applicability(const PerturbationPair& pair, const BoundOptions& opts) {
    Applicability a;
    a.general = !pair.a_is_zero() && !pair.b_is_zero();
    if (!a.general) a.general_reason = zero_reason(pair);
    a.eqrank = a.general;
    a.eqrank_reason = a.general_reason;
    if (a.eqrank && opts.force_general_rank) {
        a.eqrank = false;
        a.eqrank_reason = "general-rank formulas forced";
    } else if (a.eqrank && !pair.equal_rank()) {
        a.eqrank = false;
        a.eqrank_reason = "requires rank(A) == rank(B)";
    }
    return a;
}

}  // namespace detail

inline AuxiliaryQuantities auxiliary_quantities(const PerturbationPair& pair) {
    AuxiliaryQuantities x;
    if (pair.a_is_zero() || pair.b_is_zero()) return x;
    const PairQuantities& q = pair.q;
    using detail::clamp0;

    x.alpha1 = std::max(q.bdag_e_adag_f2 / q.bdag_spec2, q.b_etld_a_f2 / q.a_spec2);
    x.alpha2 = std::max(q.adag_e_bdag_f2 / q.adag_spec2, q.a_etld_b_f2 / q.b_spec2);
    x.alpha1_prime = std::min(q.b_spec2 * q.bdag_e_adag_f2, q.adag_spec2 * q.b_etld_a_f2);
    x.alpha2_prime = std::min(q.a_spec2 * q.adag_e_bdag_f2, q.bdag_spec2 * q.a_etld_b_f2);

    const double e_minus_pbe = clamp0(q.e_f2 - q.pb_e_f2);
    const double e_minus_pae = clamp0(q.e_f2 - q.pa_e_f2);
    const double et_minus_etpb = clamp0(q.etld_f2 - q.etld_pb_f2);
    const double et_minus_etpa = clamp0(q.etld_f2 - q.etld_pa_f2);
    x.beta1 = std::min(q.adag_spec2 * e_minus_pbe, q.a_spec2 * et_minus_etpb);
    x.beta2 = std::min(q.bdag_spec2 * e_minus_pae, q.b_spec2 * et_minus_etpa);
    x.beta1_prime = std::max(e_minus_pbe / q.a_spec2, et_minus_etpb / q.adag_spec2);
    x.beta2_prime = std::max(e_minus_pae / q.b_spec2, et_minus_etpa / q.bdag_spec2);

    const double epas_minus_beta = clamp0(q.e_pas_f2 - q.b_etld_a_f2);
    const double epbs_minus_aetb = clamp0(q.e_pbs_f2 - q.a_etld_b_f2);
    const double paset_minus_aebd = clamp0(q.pas_etld_f2 - q.adag_e_bdag_f2);
    const double pbset_minus_bead = clamp0(q.pbs_etld_f2 - q.bdag_e_adag_f2);
    x.gamma1 = std::min(q.adag_spec2 * epas_minus_beta, q.a_spec2 * paset_minus_aebd);
    x.gamma2 = std::min(q.bdag_spec2 * epbs_minus_aetb, q.b_spec2 * pbset_minus_bead);
    x.gamma1_prime = std::max(epas_minus_beta / q.a_spec2, paset_minus_aebd / q.adag_spec2);
    x.gamma2_prime = std::max(epbs_minus_aetb / q.b_spec2, pbset_minus_bead / q.bdag_spec2);
    return x;
}

/// Sun, Chen, and Li upper bounds for the primal deviation, with the
/// equal-rank variants.
inline std::vector<BoundRecord> classical_bounds(const PerturbationPair& pair, const BoundOptions& opts = {}) {
    const auto ap = detail::applicability(pair, opts);
    const PairQuantities& q = pair.q;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    using detail::primal_record;

    double sun = nan, sun_eq = nan, chen = nan, chen_eq = nan, li = nan, li_eq = nan;
    if (ap.general) {
        sun = (q.adag_spec2 + q.bdag_spec2) * q.e_f2;
        sun_eq = 2.0 * std::min(q.adag_spec2, q.bdag_spec2) * q.e_f2;
        chen = q.e_adag_f2 + q.e_bdag_f2;
        chen_eq = 2.0 * std::min(q.e_adag_f2, q.e_bdag_f2);
        li = (q.adag_spec2 + q.bdag_spec2) * q.e_f2 - (q.bdag_spec2 / q.adag_spec2) * q.adag_e_f2 -
             (q.adag_spec2 / q.bdag_spec2) * q.bdag_e_f2;
        li_eq = 2.0 * std::min(q.bdag_spec2 * q.e_f2 - (q.bdag_spec2 / q.adag_spec2) * q.adag_e_f2,
                               q.adag_spec2 * q.e_f2 - (q.adag_spec2 / q.bdag_spec2) * q.bdag_e_f2);
    }
    std::vector<BoundRecord> out;
    out.push_back(primal_record(BoundId::sun_up, BoundKind::upper, sun, ap.general, ap.general_reason));
    out.push_back(primal_record(BoundId::sun_up_eqrank, BoundKind::upper, sun_eq, ap.eqrank, ap.eqrank_reason));
    out.push_back(primal_record(BoundId::chen_up, BoundKind::upper, chen, ap.general, ap.general_reason));
    out.push_back(primal_record(BoundId::chen_up_eqrank, BoundKind::upper, chen_eq, ap.eqrank, ap.eqrank_reason));
    out.push_back(primal_record(BoundId::li_up, BoundKind::upper, li, ap.general, ap.general_reason));
    out.push_back(primal_record(BoundId::li_up_eqrank, BoundKind::upper, li_eq, ap.eqrank, ap.eqrank_reason));
    return out;
}

/// Rank-only bracket: |s-r| below, s+r or 2m-s-r above. Always applicable.
inline std::pair<BoundRecord, BoundRecord> rank_bounds(const PerturbationPair& pair) {
    const double r = static_cast<double>(pair.rank_a());
    const double s = static_cast<double>(pair.rank_b());
    const double m = static_cast<double>(pair.m());
    const double lower = std::abs(s - r);
    const double upper = (s + r <= m) ? s + r : 2.0 * m - s - r;
    return {detail::primal_record(BoundId::rank_low, BoundKind::lower, lower, true),
            detail::primal_record(BoundId::rank_up, BoundKind::upper, upper, true)};
}

/// New upper bounds (alpha, beta, gamma forms) together with the coefficients
/// they are built from.
inline std::pair<AuxiliaryQuantities, std::vector<BoundRecord>> new_upper_bounds(const PerturbationPair& pair,
                                                                                 const BoundOptions& opts = {}) {
    const auto ap = detail::applicability(pair, opts);
    const AuxiliaryQuantities x = auxiliary_quantities(pair);
    const PairQuantities& q = pair.q;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    using detail::primal_record;

    double up1 = nan, up1_eq = nan, up2 = nan, up2_eq = nan, up3 = nan, up3_eq = nan;
    if (ap.general) {
        up1 = q.e_adag_f2 + q.e_bdag_f2 - x.alpha1 - x.alpha2;
        up1_eq = 2.0 * std::min(q.e_adag_f2 - x.alpha1, q.e_bdag_f2 - x.alpha2);
        up2 = x.beta1 + x.beta2;
        up2_eq = 2.0 * std::min(x.beta1, x.beta2);
        up3 = x.gamma1 + x.gamma2;
        up3_eq = 2.0 * std::min(x.gamma1, x.gamma2);
    }
    std::vector<BoundRecord> out;
    out.push_back(primal_record(BoundId::new_up1, BoundKind::upper, up1, ap.general, ap.general_reason));
    out.push_back(primal_record(BoundId::new_up1_eqrank, BoundKind::upper, up1_eq, ap.eqrank, ap.eqrank_reason));
    out.push_back(primal_record(BoundId::new_up2, BoundKind::upper, up2, ap.general, ap.general_reason));
    out.push_back(primal_record(BoundId::new_up2_eqrank, BoundKind::upper, up2_eq, ap.eqrank, ap.eqrank_reason));
    out.push_back(primal_record(BoundId::new_up3, BoundKind::upper, up3, ap.general, ap.general_reason));
    out.push_back(primal_record(BoundId::new_up3_eqrank, BoundKind::upper, up3_eq, ap.eqrank, ap.eqrank_reason));
    return {x, std::move(out)};
}

/// New lower bounds (primed coefficients).
inline std::pair<AuxiliaryQuantities, std::vector<BoundRecord>> new_lower_bounds(const PerturbationPair& pair,
                                                                                 const BoundOptions& opts = {}) {
    const auto ap = detail::applicability(pair, opts);
    const AuxiliaryQuantities x = auxiliary_quantities(pair);
    const PairQuantities& q = pair.q;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    using detail::primal_record;

    double lo1 = nan, lo1_eq = nan, lo2 = nan, lo2_eq = nan, lo3 = nan, lo3_eq = nan;
    if (ap.general) {
        lo1 = q.e_adag_f2 + q.e_bdag_f2 - x.alpha1_prime - x.alpha2_prime;
        lo1_eq = 2.0 * std::max(q.e_adag_f2 - x.alpha1_prime, q.e_bdag_f2 - x.alpha2_prime);
        lo2 = x.beta1_prime + x.beta2_prime;
        lo2_eq = 2.0 * std::max(x.beta1_prime, x.beta2_prime);
        lo3 = x.gamma1_prime + x.gamma2_prime;
        lo3_eq = 2.0 * std::max(x.gamma1_prime, x.gamma2_prime);
    }
    std::vector<BoundRecord> out;
    out.push_back(primal_record(BoundId::new_low1, BoundKind::lower, lo1, ap.general, ap.general_reason));
    out.push_back(primal_record(BoundId::new_low1_eqrank, BoundKind::lower, lo1_eq, ap.eqrank, ap.eqrank_reason));
    out.push_back(primal_record(BoundId::new_low2, BoundKind::lower, lo2, ap.general, ap.general_reason));
    out.push_back(primal_record(BoundId::new_low2_eqrank, BoundKind::lower, lo2_eq, ap.eqrank, ap.eqrank_reason));
    out.push_back(primal_record(BoundId::new_low3, BoundKind::lower, lo3, ap.general, ap.general_reason));
    out.push_back(primal_record(BoundId::new_low3_eqrank, BoundKind::lower, lo3_eq, ap.eqrank, ap.eqrank_reason));
    return {x, std::move(out)};
}

/// Phi(lambda) = lambda(||E||^2 - ||A E~ B||^2) + (1-lambda)(||E~||^2 - ||B^+ E A^+||^2).
inline double phi(const PerturbationPair& pair, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("phi: lambda must lie in [0,1]");
    const PairQuantities& q = pair.q;
    return lambda * (q.e_f2 - q.a_etld_b_f2) + (1.0 - lambda) * (q.etld_f2 - q.bdag_e_adag_f2);
}

/// Psi(mu) = mu(||E||^2 - ||B E~ A||^2) + (1-mu)(||E~||^2 - ||A^+ E B^+||^2).
inline double psi(const PerturbationPair& pair, double mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("psi: mu must lie in [0,1]");
    const PairQuantities& q = pair.q;
    return mu * (q.e_f2 - q.b_etld_a_f2) + (1.0 - mu) * (q.etld_f2 - q.adag_e_bdag_f2);
}

/// Spectral data of one matrix, the context of the I/J weight functions.
struct SpectralContext {
    double norm2_sq;       // ||M||_2^2
    double pinv_norm2_sq;  // ||M^+||_2^2
};

inline SpectralContext context_a(const PerturbationPair& pair) { return {pair.q.a_spec2, pair.q.adag_spec2}; }
inline SpectralContext context_b(const PerturbationPair& pair) { return {pair.q.b_spec2, pair.q.bdag_spec2}; }

/// I_M(t) = t/||M^+||_2^2 + (1-t)/||M||_2^2.
inline double i_weight(const SpectralContext& ctx, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("i_weight: t must lie in [0,1]");
    if (ctx.norm2_sq <= 0.0 || ctx.pinv_norm2_sq <= 0.0)
        throw std::invalid_argument("i_weight: zero matrix has no weight");
    return t / ctx.pinv_norm2_sq + (1.0 - t) / ctx.norm2_sq;
}

/// J_M(t) = t ||M||_2^2 + (1-t) ||M^+||_2^2.
inline double j_weight(const SpectralContext& ctx, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("j_weight: t must lie in [0,1]");
    if (ctx.norm2_sq <= 0.0 || ctx.pinv_norm2_sq <= 0.0)
        throw std::invalid_argument("j_weight: zero matrix has no weight");
    return t * ctx.norm2_sq + (1.0 - t) * ctx.pinv_norm2_sq;
}

/// Parameterized combined upper bounds plus the lambda = mu = 1 corollary
/// records. The corollary values are evaluated through the same Phi/Psi route
/// as the family, so the specialization agrees bit for bit.
inline std::vector<BoundRecord> combined_upper(const PerturbationPair& pair, const CombinedParams& params,
                                               const BoundOptions& opts = {}) {
    const auto ap = detail::applicability(pair, opts);
    std::vector<BoundRecord> out;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    using detail::combined_record;

    if (!ap.general) {
        const CombinedWeights unit{1.0, 1.0};
        for (BoundId id : {BoundId::comb_up_weighted, BoundId::comb_up_sum, BoundId::comb_up_eqrank_1,
                           BoundId::comb_up_eqrank_2, BoundId::corup_1_1, BoundId::corup_1_2, BoundId::corup_2_1,
                           BoundId::corup_2_2})
            out.push_back(combined_record(id, BoundKind::upper, unit, nan, false, ap.general_reason, params));
        return out;
    }

    const SpectralContext ca = context_a(pair), cb = context_b(pair);
    const double ia_l = i_weight(ca, params.lambda()), ib_l = i_weight(cb, params.lambda());
    const double ia_m = i_weight(ca, params.mu()), ib_m = i_weight(cb, params.mu());
    const double phi_l = phi(pair, params.lambda()), psi_m = psi(pair, params.mu());

    out.push_back(combined_record(BoundId::comb_up_weighted, BoundKind::upper,
                                  {1.0, std::min(ia_l / ib_l, ib_m / ia_m)}, phi_l / ib_l + psi_m / ia_m, true,
                                  {}, params));
    out.push_back(combined_record(BoundId::comb_up_sum, BoundKind::upper, {1.0, 1.0},
                                  (phi_l + psi_m) / std::min({ia_l, ib_l, ia_m, ib_m}), true, {}, params));
    out.push_back(combined_record(BoundId::comb_up_eqrank_1, BoundKind::upper, {ib_l, ia_l}, 2.0 * phi_l,
                                  ap.eqrank, ap.eqrank_reason, params));
    out.push_back(combined_record(BoundId::comb_up_eqrank_2, BoundKind::upper, {ia_m, ib_m}, 2.0 * psi_m,
                                  ap.eqrank, ap.eqrank_reason, params));

    const CombinedParams at_one(1.0, 1.0, 0.0, 0.0);
    const double ia1 = i_weight(ca, 1.0), ib1 = i_weight(cb, 1.0);
    const double phi1 = phi(pair, 1.0), psi1 = psi(pair, 1.0);
    const CombinedWeights ratio{1.0, std::min(ia1 / ib1, ib1 / ia1)};
    out.push_back(combined_record(BoundId::corup_1_1, BoundKind::upper, ratio, phi1 / ib1 + psi1 / ia1, true, {},
                                  at_one));
    out.push_back(combined_record(BoundId::corup_1_2, BoundKind::upper, {1.0, 1.0},
                                  (phi1 + psi1) / std::min(ia1, ib1), true, {}, at_one));
    out.push_back(combined_record(BoundId::corup_2_1, BoundKind::upper, ratio,
                                  2.0 * std::min(phi1 / ib1, psi1 / ia1), ap.eqrank, ap.eqrank_reason, at_one));
    out.push_back(combined_record(BoundId::corup_2_2, BoundKind::upper, {1.0, 1.0},
                                  2.0 * (phi1 + psi1) / (ia1 + ib1), ap.eqrank, ap.eqrank_reason, at_one));
    return out;
}

/// Parameterized combined lower bounds plus the xi = eta = 0 corollary
/// records, evaluated through the same route for exact specialization.
inline std::vector<BoundRecord> combined_lower(const PerturbationPair& pair, const CombinedParams& params,
                                               const BoundOptions& opts = {}) {
    const auto ap = detail::applicability(pair, opts);
    std::vector<BoundRecord> out;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    using detail::combined_record;

    if (!ap.general) {
        const CombinedWeights unit{1.0, 1.0};
        for (BoundId id : {BoundId::comb_low_weighted, BoundId::comb_low_sum, BoundId::comb_low_eqrank_1,
                           BoundId::comb_low_eqrank_2, BoundId::corlow_1_1, BoundId::corlow_1_2,
                           BoundId::corlow_2_1, BoundId::corlow_2_2})
            out.push_back(combined_record(id, BoundKind::lower, unit, nan, false, ap.general_reason, params));
        return out;
    }

    const SpectralContext ca = context_a(pair), cb = context_b(pair);
    const double ja_x = j_weight(ca, params.xi()), jb_x = j_weight(cb, params.xi());
    const double ja_e = j_weight(ca, params.eta()), jb_e = j_weight(cb, params.eta());
    const double phi_x = phi(pair, params.xi()), psi_e = psi(pair, params.eta());

    out.push_back(combined_record(BoundId::comb_low_weighted, BoundKind::lower,
                                  {1.0, std::max(ja_x / jb_x, jb_e / ja_e)}, phi_x / jb_x + psi_e / ja_e, true,
                                  {}, params));
    out.push_back(combined_record(BoundId::comb_low_sum, BoundKind::lower, {1.0, 1.0},
                                  (phi_x + psi_e) / std::max({ja_x, jb_x, ja_e, jb_e}), true, {}, params));
    out.push_back(combined_record(BoundId::comb_low_eqrank_1, BoundKind::lower, {jb_x, ja_x}, 2.0 * phi_x,
                                  ap.eqrank, ap.eqrank_reason, params));
    out.push_back(combined_record(BoundId::comb_low_eqrank_2, BoundKind::lower, {ja_e, jb_e}, 2.0 * psi_e,
                                  ap.eqrank, ap.eqrank_reason, params));

    const CombinedParams at_zero(1.0, 1.0, 0.0, 0.0);
    const double ja0 = j_weight(ca, 0.0), jb0 = j_weight(cb, 0.0);
    const double phi0 = phi(pair, 0.0), psi0 = psi(pair, 0.0);
    const CombinedWeights ratio{1.0, std::max(ja0 / jb0, jb0 / ja0)};
    out.push_back(combined_record(BoundId::corlow_1_1, BoundKind::lower, ratio, phi0 / jb0 + psi0 / ja0, true, {},
                                  at_zero));
    out.push_back(combined_record(BoundId::corlow_1_2, BoundKind::lower, {1.0, 1.0},
                                  (phi0 + psi0) / std::max(ja0, jb0), true, {}, at_zero));
    out.push_back(combined_record(BoundId::corlow_2_1, BoundKind::lower, ratio,
                                  2.0 * std::max(phi0 / jb0, psi0 / ja0), ap.eqrank, ap.eqrank_reason, at_zero));
    out.push_back(combined_record(BoundId::corlow_2_2, BoundKind::lower, {1.0, 1.0},
                                  2.0 * (phi0 + psi0) / (ja0 + jb0), ap.eqrank, ap.eqrank_reason, at_zero));
    return out;
}

/// Chen's and Li's combined estimates.
inline std::vector<BoundRecord> classical_combined_bounds(const PerturbationPair& pair,
                                                          const BoundOptions& opts = {}) {
    const auto ap = detail::applicability(pair, opts);
    const PairQuantities& q = pair.q;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    using detail::combined_record;

    CombinedWeights ratio{1.0, 1.0};
    double chen1 = nan, chen2 = nan, chen3 = nan, li1 = nan, li2 = nan;
    if (ap.general) {
        ratio.w_dual = std::min(q.adag_spec2 / q.bdag_spec2, q.bdag_spec2 / q.adag_spec2);
        chen1 = (q.adag_spec2 + q.bdag_spec2) * q.e_f2;
        chen2 = 2.0 * std::min(q.adag_spec2, q.bdag_spec2) * q.e_f2;
        chen3 = 4.0 * q.adag_spec2 * q.bdag_spec2 / (q.adag_spec2 + q.bdag_spec2) * q.e_f2;
        li1 = 2.0 * std::max(q.adag_spec2, q.bdag_spec2) * q.e_f2 -
              (q.adag_e_bdag_f2 + q.bdag_e_adag_f2) / std::min(q.adag_spec2, q.bdag_spec2);
        li2 = 4.0 * q.adag_spec2 * q.bdag_spec2 / (q.adag_spec2 + q.bdag_spec2) * q.e_f2 -
              2.0 * (q.adag_e_bdag_f2 + q.bdag_e_adag_f2) / (q.adag_spec2 + q.bdag_spec2);
    }
    std::vector<BoundRecord> out;
    out.push_back(combined_record(BoundId::chen_comb1, BoundKind::upper, ratio, chen1, ap.general,
                                  ap.general_reason));
    out.push_back(combined_record(BoundId::chen_comb2, BoundKind::upper, ratio, chen2, ap.eqrank,
                                  ap.eqrank_reason));
    out.push_back(combined_record(BoundId::chen_comb3, BoundKind::upper, {1.0, 1.0}, chen3, ap.eqrank,
                                  ap.eqrank_reason));
    out.push_back(combined_record(BoundId::li_comb1, BoundKind::upper, {1.0, 1.0}, li1, ap.general,
                                  ap.general_reason));
    out.push_back(combined_record(BoundId::li_comb2, BoundKind::upper, {1.0, 1.0}, li2, ap.eqrank,
                                  ap.eqrank_reason));
    return out;
}

/// First record with the given id; throws if absent.
inline const BoundRecord& find_bound(const std::vector<BoundRecord>& records, BoundId id) {
    for (const BoundRecord& r : records)
        if (r.bound_id == id) return r;
    throw std::logic_error(std::string("find_bound: no record with id ") + to_string(id));
}

/// The default evaluation grid: {0, 0.25, 0.5, 0.75, 1}^2, applied to
/// (lambda, mu) and (xi, eta) simultaneously.
inline std::vector<CombinedParams> default_param_grid() {
    const double pts[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<CombinedParams> grid;
    for (double u : pts)
        for (double v : pts) grid.emplace_back(u, v, u, v);
    return grid;
}

/// Every record in the catalog: classical, rank, new upper/lower, classical
/// combined, and the parameterized families over the given grid. The
/// parameter-free corollary records are emitted once.
inline std::vector<BoundRecord> all_bounds(const PerturbationPair& pair, const std::vector<CombinedParams>& grid,
                                           const BoundOptions& opts = {}) {
    if (grid.empty()) throw std::invalid_argument("all_bounds: parameter grid must be non-empty");
    std::vector<BoundRecord> out = classical_bounds(pair, opts);
    auto [low_rec, up_rec] = rank_bounds(pair);
    out.push_back(low_rec);
    out.push_back(up_rec);
    for (auto& r : new_upper_bounds(pair, opts).second) out.push_back(r);
    for (auto& r : new_lower_bounds(pair, opts).second) out.push_back(r);
    for (auto& r : classical_combined_bounds(pair, opts)) out.push_back(r);

    bool first = true;
    auto corollary = [](BoundId id) {
        return id == BoundId::corup_1_1 || id == BoundId::corup_1_2 || id == BoundId::corup_2_1 ||
               id == BoundId::corup_2_2 || id == BoundId::corlow_1_1 || id == BoundId::corlow_1_2 ||
               id == BoundId::corlow_2_1 || id == BoundId::corlow_2_2;
    };
    for (const CombinedParams& p : grid) {
        for (auto& r : combined_upper(pair, p, opts))
            if (first || !corollary(r.bound_id)) out.push_back(r);
        for (auto& r : combined_lower(pair, p, opts))
            if (first || !corollary(r.bound_id)) out.push_back(r);
        first = false;
    }
    return out;
}

}  // namespace projbound
