#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "projbound/bounds.hpp"
#include "projbound/experiments.hpp"
#include "projbound/identities.hpp"
#include "projbound/io.hpp"

namespace projbound {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline std::string applicability_cell(const BoundRecord& rec, double primal, double dual, double tol) {
    if (!rec.applicable) return "n/a";
    return sandwich_ok(rec, primal, dual, tol) ? "ok" : "violated";
}

}  // namespace detail

inline nlohmann::json record_json(const BoundRecord& rec, double primal, double dual, double tol = 1e-9) {
    nlohmann::json j;
    j["bound_id"] = to_string(rec.bound_id);
    j["kind"] = to_string(rec.kind);
    j["target"] = to_string(rec.target);
    if (rec.combined_weights) {
        j["w_primal"] = rec.combined_weights->w_primal;
        j["w_dual"] = rec.combined_weights->w_dual;
    }
    if (rec.params) {
        j["lambda"] = rec.params->lambda();
        j["mu"] = rec.params->mu();
        j["xi"] = rec.params->xi();
        j["eta"] = rec.params->eta();
    }
    j["value"] = rec.value;
    j["applicable"] = rec.applicable;
    if (!rec.applicable) j["inapplicability_reason"] = rec.inapplicability_reason;
    if (rec.applicable) {
        const double exact = exact_target(rec, primal, dual);
        j["exact_target"] = exact;
        j["slack"] = sandwich_slack(rec, primal, dual);
        j["sandwich"] = detail::applicability_cell(rec, primal, dual, tol);
    }
    return j;
}

/// Long-format CSV for a set of records against one pair.
inline std::string bounds_csv(const std::vector<BoundRecord>& records, double primal, double dual,
                              double tol = 1e-9) {
    CsvBuilder csv;
    csv.row({"bound_id", "kind", "target", "lambda", "mu", "xi", "eta", "w_primal", "w_dual", "value",
             "applicable", "inapplicability_reason", "exact_primal", "exact_dual", "exact_target", "slack",
             "sandwich"});
    for (const BoundRecord& rec : records) {
        std::vector<std::string> cells;
        cells.push_back(to_string(rec.bound_id));
        cells.push_back(to_string(rec.kind));
        cells.push_back(to_string(rec.target));
        if (rec.params) {
            cells.push_back(format_full(rec.params->lambda()));
            cells.push_back(format_full(rec.params->mu()));
            cells.push_back(format_full(rec.params->xi()));
            cells.push_back(format_full(rec.params->eta()));
        } else {
            cells.insert(cells.end(), {"", "", "", ""});
        }
        if (rec.combined_weights) {
            cells.push_back(format_full(rec.combined_weights->w_primal));
            cells.push_back(format_full(rec.combined_weights->w_dual));
        } else {
            cells.insert(cells.end(), {"", ""});
        }
        cells.push_back(format_full(rec.value));
        cells.push_back(rec.applicable ? "true" : "false");
        cells.push_back(rec.inapplicability_reason);
        cells.push_back(format_full(primal));
        cells.push_back(format_full(dual));
        if (rec.applicable) {
            cells.push_back(format_full(exact_target(rec, primal, dual)));
            cells.push_back(format_full(sandwich_slack(rec, primal, dual)));
            cells.push_back(detail::applicability_cell(rec, primal, dual, tol));
        } else {
            cells.insert(cells.end(), {"", "", "n/a"});
        }
        csv.row(cells);
    }
    return csv.str();
}

inline nlohmann::json bounds_json(const std::vector<BoundRecord>& records, double primal, double dual,
                                  double tol = 1e-9) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = nlohmann::json::object();
    j["rows"] = nlohmann::json::array();
    for (const BoundRecord& rec : records) j["rows"].push_back(record_json(rec, primal, dual, tol));
    j["aggregates"] = {{"exact_primal", primal}, {"exact_dual", dual}};
    return j;
}

/// Identity residual table; tolerance per row is tol*max(1, lhs).
inline std::string identities_csv(const std::vector<IdentityResidualReport>& rows, double tol = 1e-9) {
    CsvBuilder csv;
    csv.row({"identity_id", "applicable", "lhs", "rhs", "abs_residual", "tolerance", "status"});
    for (const auto& r : rows) {
        const double row_tol = tol * std::max(1.0, r.lhs);
        std::string status = "n/a";
        if (r.applicable) status = r.abs_residual <= row_tol ? "ok" : "violated";
        csv.row({to_string(r.identity_id), r.applicable ? "true" : "false", format_full(r.lhs), format_full(r.rhs),
                 format_full(r.abs_residual), format_full(row_tol), status});
    }
    return csv.str();
}

inline nlohmann::json identities_json(const std::vector<IdentityResidualReport>& rows, double tol = 1e-9) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = nlohmann::json::object();
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        const double row_tol = tol * std::max(1.0, r.lhs);
        nlohmann::json row;
        row["identity_id"] = to_string(r.identity_id);
        row["applicable"] = r.applicable;
        row["lhs"] = r.lhs;
        row["rhs"] = r.rhs;
        row["abs_residual"] = r.abs_residual;
        row["tolerance"] = row_tol;
        row["ok"] = !r.applicable || r.abs_residual <= row_tol;
        j["rows"].push_back(row);
    }
    return j;
}

inline bool identities_all_ok(const std::vector<IdentityResidualReport>& rows, double tol = 1e-9) {
    for (const auto& r : rows)
        if (r.applicable && r.abs_residual > tol * std::max(1.0, r.lhs)) return false;
    return true;
}

/// Wide CSV for a sweep: one row per epsilon, one value column per record
/// (weights appended for combined records), then the reference columns.
inline std::string sweep_csv(const SweepReport& report) {
    CsvBuilder csv;
    std::vector<std::string> header{"epsilon", "exact_primal", "exact_dual"};
    if (!report.rows.empty()) {
        for (const BoundRecord& rec : report.rows.front().records) {
            header.push_back(std::string("value_") + to_string(rec.bound_id));
            if (rec.target == BoundTarget::combined) {
                header.push_back(std::string("w_primal_") + to_string(rec.bound_id));
                header.push_back(std::string("w_dual_") + to_string(rec.bound_id));
            }
        }
        for (const auto& [name, _] : report.rows.front().references) header.push_back(name);
    }
    csv.row(header);
    for (const SweepRow& row : report.rows) {
        std::vector<std::string> cells{format_full(row.epsilon), format_full(row.exact_primal),
                                       format_full(row.exact_dual)};
        for (const BoundRecord& rec : row.records) {
            cells.push_back(format_full(rec.value));
            if (rec.target == BoundTarget::combined) {
                cells.push_back(format_full(rec.combined_weights->w_primal));
                cells.push_back(format_full(rec.combined_weights->w_dual));
            }
        }
        for (const auto& [_, value] : row.references) cells.push_back(format_full(value));
        csv.row(cells);
    }
    return csv.str();
}

inline nlohmann::json sweep_json(const SweepReport& report, double tol = 1e-9) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = {{"scenario", report.scenario_id},
                   {"epsilon_grid", report.epsilon_grid},
                   {"seed", report.metadata.seed},
                   {"timestamp", report.metadata.timestamp}};
    j["rows"] = nlohmann::json::array();
    for (const SweepRow& row : report.rows) {
        nlohmann::json r;
        r["epsilon"] = row.epsilon;
        r["exact_primal"] = row.exact_primal;
        r["exact_dual"] = row.exact_dual;
        r["records"] = nlohmann::json::array();
        for (const BoundRecord& rec : row.records)
            r["records"].push_back(record_json(rec, row.exact_primal, row.exact_dual, tol));
        nlohmann::json refs = nlohmann::json::object();
        for (const auto& [name, value] : row.references) refs[name] = value;
        r["references"] = refs;
        j["rows"].push_back(r);
    }
    return j;
}

inline std::string tightness_stats_csv(const TightnessReport& report) {
    CsvBuilder csv;
    csv.row({"bound_id", "n_applicable", "mean_gap", "median_gap", "max_gap"});
    for (const BoundStats& s : report.stats)
        csv.row({s.bound_id, std::to_string(s.n_applicable), format_full(s.mean_gap), format_full(s.median_gap),
                 format_full(s.max_gap)});
    return csv.str();
}

inline std::string tightness_winrate_csv(const TightnessReport& report) {
    CsvBuilder csv;
    csv.row({"bound_i", "bound_j", "win_rate", "tie_rate"});
    for (std::size_t i = 0; i < report.ids.size(); ++i)
        for (std::size_t k = 0; k < report.ids.size(); ++k)
            csv.row({report.ids[i], report.ids[k], format_full(report.win_rate[i][k]),
                     format_full(report.tie_rate[i][k])});
    return csv.str();
}

inline nlohmann::json tightness_json(const TightnessReport& report) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = {{"m", report.spec.m},
                   {"n", report.spec.n},
                   {"rank_a", report.spec.rank_a},
                   {"rank_b", report.spec.rank_b},
                   {"mode", report.spec.mode == PairMode::independent ? "independent" : "additive"},
                   {"perturb_scale", report.spec.perturb_scale},
                   {"seed", report.spec.seed},
                   {"n_samples", report.n_samples},
                   {"timestamp", report.timestamp}};
    j["rows"] = nlohmann::json::array();
    for (const BoundStats& s : report.stats)
        j["rows"].push_back({{"bound_id", s.bound_id},
                             {"n_applicable", s.n_applicable},
                             {"mean_gap", s.mean_gap},
                             {"median_gap", s.median_gap},
                             {"max_gap", s.max_gap}});
    j["aggregates"] = {{"ids", report.ids},
                       {"win_rate", report.win_rate},
                       {"tie_rate", report.tie_rate},
                       {"sandwich_violations", report.sandwich_violations}};
    return j;
}

}  // namespace projbound
