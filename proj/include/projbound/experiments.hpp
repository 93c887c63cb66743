#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "projbound/bounds.hpp"
#include "projbound/io.hpp"
#include "projbound/pair.hpp"
#include "projbound/random.hpp"

namespace projbound {

/// Singular-value profile of a generated matrix.
struct SvProfile {
    enum class Kind { uniform, geometric, explicit_values };
    Kind kind = Kind::uniform;
    double ratio = 10.0;         // geometric decay factor per step
    std::vector<double> values;  // explicit list, length == rank

    static SvProfile uniform() { return {}; }
    static SvProfile geometric(double ratio) {
        if (!(ratio > 0.0)) throw std::invalid_argument("SvProfile: ratio must be positive");
        return {Kind::geometric, ratio, {}};
    }
    static SvProfile explicit_list(std::vector<double> v) { return {Kind::explicit_values, 10.0, std::move(v)}; }
};

enum class PairMode {
    independent,  // B drawn with its own factors and rank_b
    additive,     // B = A + perturb_scale * G
};

/// Recipe for one random matrix pair. Fully deterministic given seed: the
/// generator is xoshiro256++ seeded through splitmix64 (see random.hpp).
struct EnsembleSpec {
    std::size_t m = 4;
    std::size_t n = 3;
    std::size_t rank_a = 2;
    std::size_t rank_b = 2;  // independent mode only
    SvProfile sv_profile;
    PairMode mode = PairMode::independent;
    double perturb_scale = 0.0;  // additive mode; 0 reproduces A exactly
    std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<double> profile_values(const SvProfile& profile, std::size_t rank, Xoshiro256PlusPlus& rng) {
    std::vector<double> sv;
    switch (profile.kind) {
        case SvProfile::Kind::uniform:
            for (std::size_t i = 0; i < rank; ++i) sv.push_back(0.5 + 1.5 * rng.uniform());
            break;
        case SvProfile::Kind::geometric:
            for (std::size_t i = 0; i < rank; ++i) sv.push_back(std::pow(profile.ratio, -static_cast<double>(i)));
            break;
        case SvProfile::Kind::explicit_values:
            if (profile.values.size() < rank)
                throw std::invalid_argument("gen_pair: explicit profile is shorter than the target rank");
            sv = profile.values;
            for (double s : sv)
                if (!(s > 0.0)) throw std::invalid_argument("gen_pair: explicit singular values must be positive");
            break;
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    sv.resize(rank);  // largest `rank` values when the explicit list is longer
    return sv;
}

inline ComplexMatrix assemble(const ComplexMatrix& u, const std::vector<double>& sv, const ComplexMatrix& v,
                              std::size_t m, std::size_t n) {
    ComplexMatrix out(m, n);
    for (std::size_t k = 0; k < sv.size(); ++k)
        for (std::size_t i = 0; i < m; ++i) {
            const Complex uik = sv[k] * u(i, k);
            for (std::size_t j = 0; j < n; ++j) out(i, j) += uik * std::conj(v(j, k));
        }
    return out;
}

}  // namespace detail

/// Random pair with prescribed ranks and singular values: Haar factors times
/// the profile diagonal, plus either an independent B or an additive Gaussian
/// perturbation of A.
inline PerturbationPair gen_pair(const EnsembleSpec& spec, TolerancePolicy policy = {}) {
    const std::size_t maxrank = std::min(spec.m, spec.n);
    if (spec.rank_a > maxrank) throw std::invalid_argument("gen_pair: rank_a exceeds min(m, n)");
    if (spec.mode == PairMode::independent && spec.rank_b > maxrank)
        throw std::invalid_argument("gen_pair: rank_b exceeds min(m, n)");

    Xoshiro256PlusPlus rng_a = substream(spec.seed, 0);
    const std::vector<double> sv_a = detail::profile_values(spec.sv_profile, spec.rank_a, rng_a);
    const ComplexMatrix ua = haar_unitary(rng_a, spec.m);
    const ComplexMatrix va = haar_unitary(rng_a, spec.n);
    const ComplexMatrix a = detail::assemble(ua, sv_a, va, spec.m, spec.n);

    Xoshiro256PlusPlus rng_b = substream(spec.seed, 1);
    ComplexMatrix b(spec.m, spec.n);
    if (spec.mode == PairMode::independent) {
        const std::vector<double> sv_b = detail::profile_values(spec.sv_profile, spec.rank_b, rng_b);
        const ComplexMatrix ub = haar_unitary(rng_b, spec.m);
        const ComplexMatrix vb = haar_unitary(rng_b, spec.n);
        b = detail::assemble(ub, sv_b, vb, spec.m, spec.n);
    } else {
        b = a;
        if (spec.perturb_scale != 0.0) {
            const ComplexMatrix g = random_gaussian_matrix(rng_b, spec.m, spec.n);
            b = a + spec.perturb_scale * g;
        }
    }

    PerturbationPair pair = make_pair(a, b, policy);
    if (pair.rank_a() != spec.rank_a)
        throw std::runtime_error("gen_pair: numerical rank of A does not match the target");
    if (spec.mode == PairMode::independent && pair.rank_b() != spec.rank_b)
        throw std::runtime_error("gen_pair: numerical rank of B does not match the target");
    return pair;
}

struct SweepRow {
    double epsilon = 0.0;
    double exact_primal = 0.0;
    double exact_dual = 0.0;
    std::vector<BoundRecord> records;
    std::vector<std::pair<std::string, double>> references;  // closed forms and derived scalars
};

struct ReportMetadata {
    std::uint64_t seed = 0;
    TolerancePolicy tolerance;
    std::string timestamp;  // excluded from the determinism contract
};

struct SweepReport {
    std::string scenario_id;
    std::vector<double> epsilon_grid;
    std::vector<SweepRow> rows;
    ReportMetadata metadata;
};

inline std::vector<double> default_epsilon_grid() { return linspace(0.11, 0.99, 90); }

namespace detail {

inline void require_open_unit_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("epsilon grid is empty");
    for (double eps : grid)
        if (!(eps > 0.1 && eps < 1.0))
            throw std::invalid_argument("epsilon grid must lie inside (0.1, 1), got " + format_full(eps));
}

}  // namespace detail

/// A = diag(1, 0), B = diag(eps/(1+eps), eps/10): the primal deviation is
/// identically 1 while the classical upper bounds blow up as eps shrinks.
/// Rows carry the evaluated bounds and the closed-form reference columns.
inline SweepReport example_41_sweep(const std::vector<double>& epsilon_grid) {
    detail::require_open_unit_grid(epsilon_grid);
    SweepReport report;
    report.scenario_id = "example_4_1";
    report.epsilon_grid = epsilon_grid;
    report.metadata.timestamp = now_iso8601();
    for (double eps : epsilon_grid) {
        const ComplexMatrix a = ComplexMatrix::diagonal({1.0, 0.0});
        const ComplexMatrix b = ComplexMatrix::diagonal({eps / (1.0 + eps), eps / 10.0});
        const PerturbationPair pair = make_pair(a, b);

        SweepRow row;
        row.epsilon = eps;
        row.exact_primal = pair.q.primal;
        row.exact_dual = pair.q.dual;
        const auto classical = classical_bounds(pair);
        row.records.push_back(find_bound(classical, BoundId::chen_up));
        row.records.push_back(find_bound(classical, BoundId::li_up));
        const auto uppers = new_upper_bounds(pair).second;
        row.records.push_back(find_bound(uppers, BoundId::new_up1));
        row.records.push_back(find_bound(uppers, BoundId::new_up2));
        const auto lowers = new_lower_bounds(pair).second;
        row.records.push_back(find_bound(lowers, BoundId::new_low1));
        row.records.push_back(find_bound(lowers, BoundId::new_low2));
        row.references.emplace_back("ref_chen_up", 1.0 + 1.0 / (eps * eps) + 1.0 / ((1.0 + eps) * (1.0 + eps)));
        row.references.emplace_back("ref_li_up", 99.0 / 100.0 + 1.0 / ((1.0 + eps) * (1.0 + eps)));
        report.rows.push_back(std::move(row));
    }
    return report;
}

/// A = diag(1, 0), B = diag(2*eps/(1+eps), eps): the combined targets are
/// C1 = 1 + eps^2 and C2 = 2, attained by the corollary bounds.
inline SweepReport example_42_sweep(const std::vector<double>& epsilon_grid) {
    detail::require_open_unit_grid(epsilon_grid);
    SweepReport report;
    report.scenario_id = "example_4_2";
    report.epsilon_grid = epsilon_grid;
    report.metadata.timestamp = now_iso8601();
    const CombinedParams corners(1.0, 1.0, 0.0, 0.0);
    for (double eps : epsilon_grid) {
        const ComplexMatrix a = ComplexMatrix::diagonal({1.0, 0.0});
        const ComplexMatrix b = ComplexMatrix::diagonal({2.0 * eps / (1.0 + eps), eps});
        const PerturbationPair pair = make_pair(a, b);
        const PairQuantities& q = pair.q;

        SweepRow row;
        row.epsilon = eps;
        row.exact_primal = q.primal;
        row.exact_dual = q.dual;
        const auto classical = classical_combined_bounds(pair);
        row.records.push_back(find_bound(classical, BoundId::chen_comb1));
        row.records.push_back(find_bound(classical, BoundId::li_comb1));
        const auto up = combined_upper(pair, corners);
        row.records.push_back(find_bound(up, BoundId::corup_1_1));
        row.records.push_back(find_bound(up, BoundId::corup_1_2));
        const auto low = combined_lower(pair, corners);
        row.records.push_back(find_bound(low, BoundId::corlow_1_1));
        row.records.push_back(find_bound(low, BoundId::corlow_1_2));

        const double ratio = std::min(q.adag_spec2 / q.bdag_spec2, q.bdag_spec2 / q.adag_spec2);
        row.references.emplace_back("c1_exact", q.primal + ratio * q.dual);
        row.references.emplace_back("c2_exact", q.primal + q.dual);
        const double ome = 1.0 - eps, ope = 1.0 + eps;
        row.references.emplace_back("ref_chen_comb1",
                                    1.0 + eps * eps + (1.0 + 1.0 / (eps * eps)) * ome * ome / (ope * ope));
        row.references.emplace_back("ref_li_comb1", 2.0 + 2.0 * ome * ome / (eps * eps * ope * ope) -
                                                        ome * ome / (2.0 * eps * eps));
        report.rows.push_back(std::move(row));
    }
    return report;
}

/// The two introductory pairs that witness the incomparability of Chen's and
/// Li's upper bounds. Rows with epsilon > 0 evaluate the diagonal pair of the
/// opening example; the epsilon = 0 row is the fixed second pair.
inline SweepReport intro_examples(const std::vector<double>& epsilon_samples = {0.2, 0.5, 0.9}) {
    SweepReport report;
    report.scenario_id = "intro";
    report.epsilon_grid = epsilon_samples;
    report.metadata.timestamp = now_iso8601();

    auto add_row = [&report](double eps, const ComplexMatrix& a, const ComplexMatrix& b, double pair_index) {
        const PerturbationPair pair = make_pair(a, b);
        SweepRow row;
        row.epsilon = eps;
        row.exact_primal = pair.q.primal;
        row.exact_dual = pair.q.dual;
        const auto classical = classical_bounds(pair);
        row.records.push_back(find_bound(classical, BoundId::chen_up));
        row.records.push_back(find_bound(classical, BoundId::li_up));
        row.references.emplace_back("pair_index", pair_index);
        const double chen = row.records[0].value, li = row.records[1].value;
        row.references.emplace_back("li_less_than_chen", li < chen ? 1.0 : 0.0);
        report.rows.push_back(std::move(row));
    };

    for (double eps : epsilon_samples) {
        if (!(eps > 0.0 && eps < 1.0))
            throw std::invalid_argument("intro_examples: epsilon must lie in (0, 1)");
        add_row(eps, ComplexMatrix::diagonal({1.0, 0.0}),
                ComplexMatrix::diagonal({eps / (1.0 + eps), eps / 10.0}), 1.0);
    }
    add_row(0.0, ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}, ComplexMatrix{{0.5, 1.0}, {0.0, 1.0}}, 2.0);
    return report;
}

/// Aggregated tightness statistics per bound id.
struct BoundStats {
    std::string bound_id;
    std::size_t n_applicable = 0;
    double mean_gap = 0.0;
    double median_gap = 0.0;
    double max_gap = 0.0;
};

struct TightnessReport {
    EnsembleSpec spec;
    std::size_t n_samples = 0;
    std::vector<BoundStats> stats;
    std::vector<std::string> ids;                // labels of the win/tie matrices
    std::vector<std::vector<double>> win_rate;   // fraction of samples where row id is at least as tight
    std::vector<std::vector<double>> tie_rate;   // fraction of samples within the tie tolerance
    std::size_t sandwich_violations = 0;
    std::string timestamp;
};

/**
 * Evaluate the full catalog over n_samples pairs drawn from the spec (sample
 * k uses the substream derived from (seed, k)) and aggregate per bound id:
 * relative gap |value - exact| / max(1, exact), reduced over the parameter
 * grid by taking each family's tightest point. Ties within 1e-12 count as
 * wins for both sides and are also reported separately.
 */
inline TightnessReport tightness_benchmark(const EnsembleSpec& spec, std::size_t n_samples,
                                           const std::vector<CombinedParams>& grid = default_param_grid(),
                                           TolerancePolicy policy = {}) {
    if (n_samples < 1) throw std::invalid_argument("tightness_benchmark: n_samples must be at least 1");
    const double tie_tol = 1e-12;

    std::map<std::string, std::vector<double>> gaps;          // id -> per-sample best gap
    std::map<std::string, std::vector<std::size_t>> present;  // id -> sample indices where applicable
    std::size_t violations = 0;

    for (std::size_t k = 0; k < n_samples; ++k) {
        EnsembleSpec sample_spec = spec;
        sample_spec.seed = splitmix64_combine(spec.seed, k);
        const PerturbationPair pair = gen_pair(sample_spec, policy);
        const auto records = all_bounds(pair, grid);

        std::map<std::string, double> best;
        for (const BoundRecord& rec : records) {
            if (!rec.applicable) continue;
            if (!sandwich_ok(rec, pair.q.primal, pair.q.dual)) ++violations;
            const double exact = exact_target(rec, pair.q.primal, pair.q.dual);
            const double gap = std::abs(rec.value - exact) / std::max(1.0, exact);
            const std::string id = to_string(rec.bound_id);
            auto it = best.find(id);
            if (it == best.end() || gap < it->second) best[id] = gap;
        }
        for (const auto& [id, gap] : best) {
            gaps[id].push_back(gap);
            present[id].push_back(k);
        }
    }

    TightnessReport report;
    report.spec = spec;
    report.n_samples = n_samples;
    report.sandwich_violations = violations;
    report.timestamp = now_iso8601();

    for (auto& [id, g] : gaps) {
        BoundStats st;
        st.bound_id = id;
        st.n_applicable = g.size();
        double sum = 0.0, mx = 0.0;
        for (double v : g) {
            sum += v;
            mx = std::max(mx, v);
        }
        st.mean_gap = sum / static_cast<double>(g.size());
        st.max_gap = mx;
        std::vector<double> sorted = g;
        std::sort(sorted.begin(), sorted.end());
        st.median_gap = sorted.size() % 2 ? sorted[sorted.size() / 2]
                                          : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
        report.stats.push_back(std::move(st));
        report.ids.push_back(id);
    }

    // Dense per-sample gap table aligned on sample index for the win matrix.
    const double nanv = std::numeric_limits<double>::quiet_NaN();
    std::map<std::string, std::vector<double>> table;
    for (const auto& [id, g] : gaps) {
        std::vector<double> column(n_samples, nanv);
        const auto& idx = present[id];
        for (std::size_t t = 0; t < idx.size(); ++t) column[idx[t]] = g[t];
        table[id] = std::move(column);
    }
    const std::size_t nids = report.ids.size();
    report.win_rate.assign(nids, std::vector<double>(nids, 0.0));
    report.tie_rate.assign(nids, std::vector<double>(nids, 0.0));
    for (std::size_t i = 0; i < nids; ++i)
        for (std::size_t j = 0; j < nids; ++j) {
            const auto& gi = table[report.ids[i]];
            const auto& gj = table[report.ids[j]];
            std::size_t both = 0, wins = 0, ties = 0;
            for (std::size_t k = 0; k < n_samples; ++k) {
                if (std::isnan(gi[k]) || std::isnan(gj[k])) continue;
                ++both;
                if (gi[k] <= gj[k] + tie_tol) ++wins;
                if (std::abs(gi[k] - gj[k]) <= tie_tol) ++ties;
            }
            report.win_rate[i][j] = both ? static_cast<double>(wins) / static_cast<double>(both) : 0.0;
            report.tie_rate[i][j] = both ? static_cast<double>(ties) / static_cast<double>(both) : 0.0;
        }
    return report;
}

}  // namespace projbound
