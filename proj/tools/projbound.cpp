// projbound: evaluate exact projector deviations, verify the identity suite,
// and compare every perturbation bound on user matrices or built-in sweeps.
//
// Exit codes: 0 success, 1 assertion failure (identity or sandwich
// violation), 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "projbound/projbound.hpp"
#include "projbound/report.hpp"

namespace fs = std::filesystem;
using namespace projbound;

namespace {

struct CommonOpts {
    std::string out_dir = ".";
    std::string formats = "csv,json";
    double rank_tol = -1.0;    // absolute numerical-rank cutoff; negative = default policy
    double check_tol = 1e-9;   // residual / sandwich tolerance scale
    bool force_general_rank = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, const char* default_formats) {
    opts.formats = default_formats;
    cmd->add_option("--out", opts.out_dir, "Output directory (created if missing)");
    cmd->add_option("--format", opts.formats, "Comma-separated subset of csv,json,svg");
    cmd->add_option("--tol", opts.rank_tol, "Absolute numerical-rank tolerance override");
    cmd->add_option("--check-tol", opts.check_tol, "Residual/sandwich tolerance scale (default 1e-9)");
    cmd->add_flag("--force-general-rank", opts.force_general_rank,
                  "Evaluate general-rank formulas only; equal-rank records become inapplicable");
}

std::set<std::string> parse_formats(const std::string& text) {
    std::set<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item != "csv" && item != "json" && item != "svg")
            throw ParseError("unknown format '" + item + "' (expected csv, json, svg)");
        out.insert(item);
    }
    if (out.empty()) throw ParseError("at least one output format must be selected");
    return out;
}

TolerancePolicy policy_of(const CommonOpts& opts) {
    TolerancePolicy p;
    if (opts.rank_tol >= 0.0) p.absolute = opts.rank_tol;
    return p;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw std::runtime_error("output directory '" + dir + "' is not writable");
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
    return (fs::path(opts.out_dir) / name).string();
}

PerturbationPair load_pair(const std::string& a_path, const std::string& b_path, const CommonOpts& opts) {
    if (a_path.empty() || b_path.empty()) throw ParseError("both --a and --b matrix files are required");
    const ComplexMatrix a = parse_matrix_file(a_path);
    const ComplexMatrix b = parse_matrix_file(b_path);
    if (!a.same_shape(b))
        throw ParseError("shape mismatch: A is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         ", B is " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    return make_pair(a, b, policy_of(opts));
}

nlohmann::json common_config(const CommonOpts& opts, const std::string& command) {
    nlohmann::json j;
    j["command"] = command;
    j["rank_tolerance"] = opts.rank_tol >= 0.0 ? nlohmann::json(opts.rank_tol) : nlohmann::json("default");
    j["check_tolerance"] = opts.check_tol;
    j["force_general_rank"] = opts.force_general_rank;
    return j;
}

int cmd_verify(const std::string& a_path, const std::string& b_path, const CommonOpts& opts) {
    ensure_out_dir(opts.out_dir);
    const auto formats = parse_formats(opts.formats);
    const PerturbationPair pair = load_pair(a_path, b_path, opts);
    const auto rows = all_identities(pair);

    if (formats.count("csv")) write_text_file(out_path(opts, "identities.csv"), identities_csv(rows, opts.check_tol));
    if (formats.count("json")) {
        nlohmann::json j = identities_json(rows, opts.check_tol);
        j["config"] = common_config(opts, "verify");
        j["config"]["timestamp"] = now_iso8601();
        write_text_file(out_path(opts, "identities.json"), j.dump(2) + "\n");
    }
    const bool ok = identities_all_ok(rows, opts.check_tol);
    std::printf("%zu identity rows, %s\n", rows.size(), ok ? "all applicable residuals within tolerance"
                                                           : "TOLERANCE VIOLATION");
    return ok ? 0 : 1;
}

int cmd_bounds(const std::string& a_path, const std::string& b_path, const CommonOpts& opts) {
    ensure_out_dir(opts.out_dir);
    const auto formats = parse_formats(opts.formats);
    const PerturbationPair pair = load_pair(a_path, b_path, opts);
    const BoundOptions bopts{opts.force_general_rank};
    const auto records = all_bounds(pair, default_param_grid(), bopts);

    if (formats.count("csv"))
        write_text_file(out_path(opts, "bounds.csv"), bounds_csv(records, pair.q.primal, pair.q.dual, opts.check_tol));
    if (formats.count("json")) {
        nlohmann::json j = bounds_json(records, pair.q.primal, pair.q.dual, opts.check_tol);
        j["config"] = common_config(opts, "bounds");
        j["config"]["timestamp"] = now_iso8601();
        write_text_file(out_path(opts, "bounds.json"), j.dump(2) + "\n");
    }
    std::size_t violations = 0;
    for (const auto& rec : records)
        if (rec.applicable && !sandwich_ok(rec, pair.q.primal, pair.q.dual, opts.check_tol)) ++violations;
    std::printf("%zu bound records, exact primal %s, dual %s, %zu sandwich violations\n", records.size(),
                format_full(pair.q.primal).c_str(), format_full(pair.q.dual).c_str(), violations);
    return violations == 0 ? 0 : 1;
}

SweepReport run_scenario(const std::string& scenario, const std::string& grid_spec) {
    if (scenario == "intro")  // fixed witnesses by default; a user grid overrides the sample points
        return grid_spec.empty() ? intro_examples() : intro_examples(parse_grid_spec(grid_spec));
    const std::vector<double> grid = grid_spec.empty() ? default_epsilon_grid() : parse_grid_spec(grid_spec);
    if (scenario == "ex41") return example_41_sweep(grid);
    if (scenario == "ex42") return example_42_sweep(grid);
    throw ParseError("unknown scenario '" + scenario + "' (expected ex41, ex42, intro)");
}

int cmd_sweep(const std::string& scenario, const std::string& grid_spec, const CommonOpts& opts) {
    ensure_out_dir(opts.out_dir);
    const auto formats = parse_formats(opts.formats);
    const SweepReport report = run_scenario(scenario, grid_spec);

    const std::string base = "sweep_" + scenario;
    if (formats.count("csv")) write_text_file(out_path(opts, base + ".csv"), sweep_csv(report));
    if (formats.count("json")) {
        nlohmann::json j = sweep_json(report, opts.check_tol);
        j["config"]["flags"] = common_config(opts, "sweep");
        write_text_file(out_path(opts, base + ".json"), j.dump(2) + "\n");
    }
    std::printf("scenario %s: %zu rows\n", report.scenario_id.c_str(), report.rows.size());
    return 0;
}

SvgSeries series_of(const SweepReport& report, BoundId id) {
    SvgSeries s;
    s.name = to_string(id);
    for (const SweepRow& row : report.rows) s.values.push_back(find_bound(row.records, id).value);
    return s;
}

SvgSeries reference_series(const SweepReport& report, const std::string& name, const std::string& label) {
    SvgSeries s;
    s.name = label;
    for (const SweepRow& row : report.rows)
        for (const auto& [key, value] : row.references)
            if (key == name) s.values.push_back(value);
    return s;
}

int cmd_reproduce(const std::string& grid_spec, const CommonOpts& opts) {
    ensure_out_dir(opts.out_dir);
    const auto formats = parse_formats(opts.formats);
    const std::vector<double> grid = grid_spec.empty() ? default_epsilon_grid() : parse_grid_spec(grid_spec);

    const SweepReport ex41 = example_41_sweep(grid);
    const SweepReport ex42 = example_42_sweep(grid);

    if (formats.count("csv")) {
        write_text_file(out_path(opts, "tables1-2.csv"), sweep_csv(ex41));
        write_text_file(out_path(opts, "tables3-4.csv"), sweep_csv(ex42));
    }
    if (formats.count("json")) {
        nlohmann::json j1 = sweep_json(ex41, opts.check_tol);
        j1["config"]["flags"] = common_config(opts, "reproduce");
        write_text_file(out_path(opts, "tables1-2.json"), j1.dump(2) + "\n");
        nlohmann::json j2 = sweep_json(ex42, opts.check_tol);
        j2["config"]["flags"] = common_config(opts, "reproduce");
        write_text_file(out_path(opts, "tables3-4.json"), j2.dump(2) + "\n");
    }
    if (formats.count("svg")) {
        SvgSeries exact1;
        exact1.name = "EXACT";
        for (const SweepRow& row : ex41.rows) exact1.values.push_back(row.exact_primal);

        write_text_file(out_path(opts, "figure1_left.svg"),
                        render_line_chart("Upper bounds on the projector deviation", "epsilon", ex41.epsilon_grid,
                                          {series_of(ex41, BoundId::chen_up), series_of(ex41, BoundId::new_up1),
                                           exact1}));
        write_text_file(out_path(opts, "figure1_right.svg"),
                        render_line_chart("Upper bounds on the projector deviation", "epsilon", ex41.epsilon_grid,
                                          {series_of(ex41, BoundId::li_up), series_of(ex41, BoundId::new_up2),
                                           exact1}));
        write_text_file(out_path(opts, "figure2_left.svg"),
                        render_line_chart("Combined upper bounds, weighted target", "epsilon", ex42.epsilon_grid,
                                          {series_of(ex42, BoundId::chen_comb1),
                                           series_of(ex42, BoundId::corup_1_1),
                                           reference_series(ex42, "c1_exact", "EXACT")}));
        write_text_file(out_path(opts, "figure2_right.svg"),
                        render_line_chart("Combined upper bounds, sum target", "epsilon", ex42.epsilon_grid,
                                          {series_of(ex42, BoundId::li_comb1), series_of(ex42, BoundId::corup_1_2),
                                           reference_series(ex42, "c2_exact", "EXACT")}));
    }
    std::printf("reproduced %zu epsilon points\n", grid.size());
    return 0;
}

int cmd_bench(EnsembleSpec spec, const std::string& profile, double ratio, const std::string& explicit_sv,
              std::size_t samples, const std::string& mode, const CommonOpts& opts) {
    ensure_out_dir(opts.out_dir);
    const auto formats = parse_formats(opts.formats);

    if (profile == "uniform") spec.sv_profile = SvProfile::uniform();
    else if (profile == "geometric") spec.sv_profile = SvProfile::geometric(ratio);
    else if (profile == "explicit") {
        std::vector<double> values;
        std::stringstream ss(explicit_sv);
        std::string item;
        while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
        spec.sv_profile = SvProfile::explicit_list(values);
    } else {
        throw ParseError("unknown profile '" + profile + "' (expected uniform, geometric, explicit)");
    }
    if (mode == "independent") spec.mode = PairMode::independent;
    else if (mode == "additive") spec.mode = PairMode::additive;
    else throw ParseError("unknown mode '" + mode + "' (expected independent, additive)");

    const TightnessReport report = tightness_benchmark(spec, samples, default_param_grid(), policy_of(opts));

    if (formats.count("csv")) {
        write_text_file(out_path(opts, "bench_stats.csv"), tightness_stats_csv(report));
        write_text_file(out_path(opts, "bench_winrate.csv"), tightness_winrate_csv(report));
    }
    if (formats.count("json")) {
        nlohmann::json j = tightness_json(report);
        j["config"]["flags"] = common_config(opts, "bench");
        write_text_file(out_path(opts, "bench.json"), j.dump(2) + "\n");
    }
    std::printf("%zu samples, %zu bound ids, %zu sandwich violations\n", report.n_samples, report.ids.size(),
                report.sandwich_violations);
    return report.sandwich_violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact L2-orthogonal-projection deviations and perturbation bounds"};
    app.require_subcommand(1);

    std::string a_path, b_path, grid_spec, scenario = "ex41";
    CommonOpts verify_opts, bounds_opts, sweep_opts, repro_opts, bench_opts;

    CLI::App* verify = app.add_subcommand("verify", "Check the deviation identities on a matrix pair");
    verify->add_option("--a", a_path, "Matrix A file");
    verify->add_option("--b", b_path, "Matrix B file");
    add_common(verify, verify_opts, "csv,json");

    CLI::App* bounds = app.add_subcommand("bounds", "Evaluate every bound record on a matrix pair");
    bounds->add_option("--a", a_path, "Matrix A file");
    bounds->add_option("--b", b_path, "Matrix B file");
    add_common(bounds, bounds_opts, "csv,json");

    CLI::App* sweep = app.add_subcommand("sweep", "Epsilon sweep of a built-in scenario");
    sweep->add_option("--scenario", scenario, "ex41, ex42, or intro");
    sweep->add_option("--grid", grid_spec, "Epsilon grid start:stop:count (default 0.11:0.99:90)");
    add_common(sweep, sweep_opts, "csv,json");

    CLI::App* repro = app.add_subcommand("reproduce", "Emit the reference tables and figures");
    repro->add_option("--grid", grid_spec, "Epsilon grid start:stop:count (default 0.11:0.99:90)");
    add_common(repro, repro_opts, "csv,json,svg");

    CLI::App* bench = app.add_subcommand("bench", "Tightness benchmark over a random ensemble");
    EnsembleSpec spec;
    std::string profile = "uniform", mode = "independent", explicit_sv;
    double ratio = 10.0;
    std::size_t samples = 100;
    bench->add_option("--m", spec.m, "Rows");
    bench->add_option("--n", spec.n, "Columns");
    bench->add_option("--rank-a", spec.rank_a, "Target rank of A");
    bench->add_option("--rank-b", spec.rank_b, "Target rank of B (independent mode)");
    bench->add_option("--profile", profile, "uniform, geometric, explicit");
    bench->add_option("--ratio", ratio, "Geometric profile decay factor");
    bench->add_option("--sv", explicit_sv, "Explicit singular values, comma separated");
    bench->add_option("--mode", mode, "independent or additive");
    bench->add_option("--perturb", spec.perturb_scale, "Additive perturbation scale");
    bench->add_option("--samples", samples, "Number of sampled pairs");
    bench->add_option("--seed", spec.seed, "PRNG seed");
    add_common(bench, bench_opts, "csv,json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(a_path, b_path, verify_opts);
        if (bounds->parsed()) return cmd_bounds(a_path, b_path, bounds_opts);
        if (sweep->parsed()) return cmd_sweep(scenario, grid_spec, sweep_opts);
        if (repro->parsed()) return cmd_reproduce(grid_spec, repro_opts);
        if (bench->parsed())
            return cmd_bench(spec, profile, ratio, explicit_sv, samples, mode, bench_opts);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const SvdError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
