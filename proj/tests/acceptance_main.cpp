// Acceptance suite: exercises every reproduction target and statistical
// property at its pinned tolerance and prints one PASS/FAIL line each.
// Returns nonzero if any check fails. The CLI-facing checks expect the
// projbound binary path in the PROJBOUND_CLI environment variable.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "projbound/projbound.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace projbound;
using test_support::example_41_pair;
using test_support::near_deficient_pair;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s criterion %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// The shared random ensemble: 1000 pairs, of which 700 are general mixed
// shapes/ranks (a slice additive, a slice geometric-profile), 200 have equal
// ranks by construction, and 100 are ill-conditioned with sigma_r = 1e-6
// (small-rotation perturbations; see test_support::near_deficient_pair).
PerturbationPair mixed_pair(std::uint64_t master, std::size_t k) {
    auto rng = substream(master, k);
    const int bucket = static_cast<int>(k % 10);
    if (bucket == 9) return near_deficient_pair(master ^ (k * 977), k % 2 == 0);
    EnsembleSpec spec;
    spec.m = 2 + rng.next() % 19;  // up to 20
    spec.n = 2 + rng.next() % 14;  // up to 15
    const std::size_t maxr = std::min(spec.m, spec.n);
    spec.rank_a = 1 + rng.next() % maxr;
    spec.rank_b = (bucket == 7 || bucket == 8) ? spec.rank_a : 1 + rng.next() % maxr;
    if (rng.uniform() < 0.2) {
        spec.rank_a = std::min<std::size_t>(spec.rank_a, 3);
        spec.rank_b = std::min<std::size_t>(spec.rank_b, 3);
        spec.sv_profile = SvProfile::geometric(10.0);
    }
    if (bucket == 6) {
        spec.mode = PairMode::additive;
        spec.perturb_scale = std::pow(10.0, -3.0 + 2.5 * rng.uniform());
        spec.rank_b = maxr;
    }
    spec.seed = splitmix64_combine(master, k * 2 + 1);
    return gen_pair(spec);
}

PerturbationPair extra_equal_rank_pair(std::size_t k) {
    auto rng = substream(424242, k);
    EnsembleSpec spec;
    spec.m = 2 + rng.next() % 10;
    spec.n = 2 + rng.next() % 10;
    const std::size_t maxr = std::min(spec.m, spec.n);
    spec.rank_a = spec.rank_b = 1 + rng.next() % maxr;
    spec.seed = splitmix64_combine(31337, k);
    return gen_pair(spec);
}

constexpr std::uint64_t kMasterSeed = 20260808;

// --- criteria 1-3: reproduction of the worked examples -------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const SweepReport report41 = example_41_sweep(default_epsilon_grid());
    const double elapsed = seconds_since(t0);

    bool ok = report41.rows.size() >= 90;
    double worst = 0.0;
    for (const SweepRow& row : report41.rows) {
        const double eps = row.epsilon;
        const double chen_ref = 1.0 + 1.0 / (eps * eps) + 1.0 / ((1 + eps) * (1 + eps));
        const double li_ref = 99.0 / 100.0 + 1.0 / ((1 + eps) * (1 + eps));
        const double chen = find_bound(row.records, BoundId::chen_up).value;
        const double li = find_bound(row.records, BoundId::li_up).value;
        worst = std::max(worst, std::abs(chen - chen_ref) / chen_ref);
        worst = std::max(worst, std::abs(li - li_ref) / li_ref);
        ok &= std::abs(chen - chen_ref) <= 1e-10 * chen_ref;
        ok &= std::abs(li - li_ref) <= 1e-10 * li_ref;
        for (BoundId id : {BoundId::new_up1, BoundId::new_up2, BoundId::new_low1, BoundId::new_low2}) {
            const double v = find_bound(row.records, id).value;
            worst = std::max(worst, std::abs(v - 1.0));
            ok &= std::abs(v - 1.0) <= 1e-10;
        }
    }
    ok &= elapsed < 1.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "first example over %zu points, worst deviation %.2e, %.3f s", report41.rows.size(), worst,
                  elapsed);
    report("1 (example sweep, upper/lower)", ok, detail);
}

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    const SweepReport report42 = example_42_sweep(default_epsilon_grid());
    const double elapsed = seconds_since(t0);

    bool ok = report42.rows.size() >= 90;
    double worst = 0.0;
    for (const SweepRow& row : report42.rows) {
        const double eps = row.epsilon;
        const double ome = 1.0 - eps, ope = 1.0 + eps;
        const double chen_ref = 1.0 + eps * eps + (1.0 + 1.0 / (eps * eps)) * ome * ome / (ope * ope);
        const double li_ref = 2.0 + 2.0 * ome * ome / (eps * eps * ope * ope) - ome * ome / (2.0 * eps * eps);

        const double corup11 = find_bound(row.records, BoundId::corup_1_1).value;
        const double corup12 = find_bound(row.records, BoundId::corup_1_2).value;
        const double chen = find_bound(row.records, BoundId::chen_comb1).value;
        const double li = find_bound(row.records, BoundId::li_comb1).value;
        worst = std::max({worst, std::abs(corup11 - (1.0 + eps * eps)), std::abs(corup12 - 2.0),
                          std::abs(chen - chen_ref) / chen_ref, std::abs(li - li_ref) / std::abs(li_ref)});
        ok &= std::abs(corup11 - (1.0 + eps * eps)) <= 1e-10;
        ok &= std::abs(corup12 - 2.0) <= 1e-10;
        ok &= std::abs(chen - chen_ref) <= 1e-10 * chen_ref;
        ok &= std::abs(li - li_ref) <= 1e-10 * std::abs(li_ref);
        for (BoundId id : {BoundId::corlow_1_1, BoundId::corlow_1_2}) {
            const BoundRecord& rec = find_bound(row.records, id);
            const double lhs = exact_target(rec, row.exact_primal, row.exact_dual);
            worst = std::max(worst, std::abs(lhs - rec.value));
            ok &= std::abs(lhs - rec.value) <= 1e-10;
        }
    }
    ok &= elapsed < 1.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "combined example over %zu points, worst deviation %.2e, %.3f s", report42.rows.size(), worst,
                  elapsed);
    report("2 (example sweep, combined)", ok, detail);
}

void criterion_3() {
    const SweepReport intro = intro_examples({0.2, 0.5, 0.9});
    bool ok = true;
    double chen2 = 0.0, li2 = 0.0;
    std::size_t flipped = 0;
    for (const SweepRow& row : intro.rows) {
        const double chen = find_bound(row.records, BoundId::chen_up).value;
        const double li = find_bound(row.records, BoundId::li_up).value;
        double pair_index = 0.0;
        for (const auto& [name, v] : row.references)
            if (name == "pair_index") pair_index = v;
        if (pair_index == 2.0) {
            chen2 = chen;
            li2 = li;
            ok &= std::abs(chen - 25.0 / 4.0) <= 1e-12;
            ok &= std::abs(li - (18.0 + 3.0 * std::sqrt(65.0)) / 4.0) <= 1e-12;
            ok &= chen < li;
        } else {
            ok &= li < chen;
            ++flipped;
        }
    }
    ok &= flipped == 3;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "second pair: Chen %.6f vs Li %.6f; order reversed at 3 epsilons",
                  chen2, li2);
    report("3 (incomparability)", ok, detail);
}

// --- criteria 4-7: statistical suites over the shared ensemble -----------

void criterion_4() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst = 0.0;
    std::size_t checked = 0;
    for (std::size_t k = 0; k < 1000; ++k) {
        const PerturbationPair pair = mixed_pair(kMasterSeed, k);
        for (const IdentityResidualReport& r : all_identities(pair)) {
            if (!r.applicable) continue;
            ++checked;
            const double rel = r.abs_residual / std::max(1.0, r.lhs);
            worst = std::max(worst, rel);
            ok &= rel <= 1e-9;
        }
    }
    const double elapsed = seconds_since(t0);
    ok &= elapsed < 30.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%zu applicable identities over 1000 pairs, worst residual %.2e, %.1f s",
                  checked, worst, elapsed);
    report("4 (identity suite)", ok, detail);
}

void criterion_5_6_7() {
    const auto grid = default_param_grid();
    const CombinedParams corners(1.0, 1.0, 0.0, 0.0);

    std::size_t violations = 0, records_checked = 0;
    bool dominance_ok = true;
    double worst_dom = -1e300;
    bool rank_ok = true;
    std::size_t branch_low = 0, branch_high = 0;

    for (std::size_t k = 0; k < 1200; ++k) {
        const PerturbationPair pair = (k < 1000) ? mixed_pair(kMasterSeed, k) : extra_equal_rank_pair(k - 1000);
        const double primal = pair.q.primal, dual = pair.q.dual;

        for (const BoundRecord& rec : all_bounds(pair, grid)) {
            if (!rec.applicable) continue;
            ++records_checked;
            if (!sandwich_ok(rec, primal, dual, 1e-9)) ++violations;
        }

        const auto classical = classical_bounds(pair);
        const auto ups = new_upper_bounds(pair).second;
        const auto comb = classical_combined_bounds(pair);
        const auto corup = combined_upper(pair, corners);
        if (!pair.a_is_zero() && !pair.b_is_zero()) {
            auto dom = [&](double lhs, double rhs) {
                worst_dom = std::max(worst_dom, lhs - rhs);
                dominance_ok &= lhs <= rhs + 1e-9;
            };
            dom(find_bound(ups, BoundId::new_up1).value, find_bound(classical, BoundId::chen_up).value);
            dom(find_bound(ups, BoundId::new_up2).value, find_bound(classical, BoundId::li_up).value);
            dom(find_bound(corup, BoundId::corup_1_1).value, find_bound(comb, BoundId::chen_comb1).value);
            dom(find_bound(corup, BoundId::corup_1_2).value, find_bound(comb, BoundId::li_comb1).value);
            if (pair.equal_rank()) {
                dom(find_bound(ups, BoundId::new_up1_eqrank).value,
                    find_bound(classical, BoundId::chen_up_eqrank).value);
                dom(find_bound(ups, BoundId::new_up2_eqrank).value,
                    find_bound(classical, BoundId::li_up_eqrank).value);
                dom(find_bound(corup, BoundId::corup_2_1).value, find_bound(comb, BoundId::chen_comb2).value);
                dom(find_bound(corup, BoundId::corup_2_2).value, find_bound(comb, BoundId::li_comb2).value);
            }
        }

        const auto [rank_low, rank_up] = rank_bounds(pair);
        (pair.rank_a() + pair.rank_b() <= pair.m()) ? ++branch_low : ++branch_high;
        rank_ok &= rank_low.value <= primal + 1e-9;
        rank_ok &= primal <= rank_up.value + 1e-9;
    }

    char detail5[160];
    std::snprintf(detail5, sizeof(detail5), "%zu applicable records over 1200 pairs, %zu violations",
                  records_checked, violations);
    report("5 (sandwich suite)", violations == 0, detail5);

    char detail6[160];
    std::snprintf(detail6, sizeof(detail6), "all sharper-than comparisons hold, worst margin %.2e", worst_dom);
    report("6 (dominance suite)", dominance_ok, detail6);

    // constructed pairs hitting both branches explicitly
    const PerturbationPair low_branch = test_support::random_pair(600001, 6, 5, 2, 3);  // s + r <= m
    const PerturbationPair high_branch = test_support::random_pair(600002, 6, 5, 4, 5);  // s + r > m
    rank_ok &= low_branch.rank_a() + low_branch.rank_b() <= low_branch.m();
    rank_ok &= high_branch.rank_a() + high_branch.rank_b() > high_branch.m();
    for (const PerturbationPair* p : {&low_branch, &high_branch}) {
        const auto [lo, up] = rank_bounds(*p);
        rank_ok &= lo.value <= p->q.primal + 1e-9 && p->q.primal <= up.value + 1e-9;
    }
    const auto [lo41, up41] = rank_bounds(example_41_pair(0.5));
    rank_ok &= lo41.value == 1.0 && up41.value == 1.0;
    rank_ok &= branch_low > 0 && branch_high > 0;

    char detail7[160];
    std::snprintf(detail7, sizeof(detail7),
                  "bracket holds on 1200 pairs (%zu low-branch, %zu high-branch); reference pair gives 1/1",
                  branch_low, branch_high);
    report("7 (rank bounds)", rank_ok, detail7);
}

void criterion_8() {
    bool ok = true;
    double worst = 0.0;
    Xoshiro256PlusPlus rng(80808);
    for (int k = 0; k < 500; ++k) {
        const std::size_t order = 2 + rng.next() % 9;  // 2..10
        const ComplexMatrix m = random_hermitian(rng, order);
        const ComplexMatrix n = random_hermitian(rng, order);
        try {
            const TraceSandwich s = trace_inequality_check(m, n);
            double magnitude = std::max(1.0, std::abs(s.lower) + std::abs(s.upper));
            const double deficit =
                std::max(s.lower - s.value, s.value - s.upper) / magnitude;
            worst = std::max(worst, deficit);
            ok &= deficit <= 1e-9;
        } catch (const std::exception&) {
            ok = false;
        }
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "500 Hermitian pairs of orders 2-10, worst relative deficit %.2e",
                  worst);
    report("8 (trace inequality)", ok, detail);
}

// --- criteria 9-10: CLI determinism and figure manifest ------------------

int run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string strip_timestamp_lines(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
    return out;
}

std::map<std::string, std::vector<double>> parse_csv_columns(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::vector<double>> columns;
    std::vector<std::string> headers;
    bool first = true;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string cell;
        std::size_t idx = 0;
        while (std::getline(ls, cell, ',')) {
            if (first) {
                headers.push_back(cell);
            } else if (idx < headers.size() && !cell.empty()) {
                try {
                    columns[headers[idx]].push_back(std::stod(cell));
                } catch (...) {
                }
            }
            ++idx;
        }
        first = false;
    }
    return columns;
}

void criterion_9(const std::string& cli, const fs::path& workdir) {
    const fs::path dir_a = workdir / "bench_a";
    const fs::path dir_b = workdir / "bench_b";
    const std::string flags = "bench --m 6 --n 5 --rank-a 3 --rank-b 4 --samples 100 --seed 1 --format csv,json";
    const int rc1 = run_cli(cli, flags + " --out " + dir_a.string());
    const int rc2 = run_cli(cli, flags + " --out " + dir_b.string());
    bool ok = rc1 == 0 && rc2 == 0;
    std::string why = "two runs";
    if (ok) {
        for (const char* name : {"bench_stats.csv", "bench_winrate.csv"}) {
            const std::string a = read_text_file((dir_a / name).string());
            const std::string b = read_text_file((dir_b / name).string());
            if (a != b) {
                ok = false;
                why = std::string(name) + " differ";
            }
        }
        const std::string ja = strip_timestamp_lines(read_text_file((dir_a / "bench.json").string()));
        const std::string jb = strip_timestamp_lines(read_text_file((dir_b / "bench.json").string()));
        if (ja != jb) {
            ok = false;
            why = "bench.json differs beyond the timestamp";
        }
        if (ja.find("\"sandwich_violations\": 0") == std::string::npos) {
            ok = false;
            why = "bench reported sandwich violations";
        }
    } else {
        why = "bench exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2);
    }
    report("9 (bench determinism)", ok,
           ok ? "repeated runs byte-identical (timestamp excluded), zero violations" : why);
}

void criterion_figures(const std::string& cli, const fs::path& workdir) {
    const fs::path dir = workdir / "repro";
    bool ok = run_cli(cli, "reproduce --out " + dir.string() + " --format csv,json,svg") == 0;
    std::string why = "reproduce failed";
    if (ok) {
        for (const char* name : {"tables1-2.csv", "tables3-4.csv", "figure1_left.svg", "figure1_right.svg",
                                 "figure2_left.svg", "figure2_right.svg"}) {
            if (!fs::exists(dir / name)) {
                ok = false;
                why = std::string("missing ") + name;
            }
        }
    }
    if (ok) {
        const auto t12 = parse_csv_columns(read_text_file((dir / "tables1-2.csv").string()));
        const auto t34 = parse_csv_columns(read_text_file((dir / "tables3-4.csv").string()));
        struct FigureCheck {
            const char* file;
            const char* series;
            const std::map<std::string, std::vector<double>>* table;
            const char* column;
        };
        const FigureCheck checks[] = {
            {"figure1_left.svg", "CHEN_UP", &t12, "value_CHEN_UP"},
            {"figure1_left.svg", "NEW_UP1", &t12, "value_NEW_UP1"},
            {"figure1_right.svg", "LI_UP", &t12, "value_LI_UP"},
            {"figure2_left.svg", "CHEN_COMB1", &t34, "value_CHEN_COMB1"},
            {"figure2_left.svg", "CORUP_1_1", &t34, "value_CORUP_1_1"},
            {"figure2_right.svg", "LI_COMB1", &t34, "value_LI_COMB1"},
        };
        for (const auto& c : checks) {
            const auto series = parse_chart_metadata(read_text_file((dir / c.file).string()));
            bool found = false;
            for (const auto& s : series) {
                if (s.name != c.series) continue;
                found = true;
                const auto& col = c.table->at(c.column);
                if (s.values.size() != col.size()) ok = false;
                for (std::size_t i = 0; ok && i < col.size(); ++i)
                    if (std::abs(s.values[i] - col[i]) > 1e-12 * std::max(1.0, std::abs(col[i]))) ok = false;
            }
            if (!found) ok = false;
            if (!ok) {
                why = std::string("series ") + c.series + " does not match " + c.column;
                break;
            }
        }
        if (ok) {
            // qualitative shape: the classical curve stays above the exact value
            const auto series = parse_chart_metadata(read_text_file((dir / "figure1_left.svg").string()));
            for (const auto& s : series)
                if (s.name == "CHEN_UP")
                    for (double v : s.values) ok &= v > 1.0;
            if (!ok) why = "classical curve does not dominate the exact value";
        }
    }
    report("figures (SVG manifest)", ok, ok ? "2 tables + 4 figures emitted, embedded series match the tables" : why);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5_6_7();
    criterion_8();

    const char* cli = std::getenv("PROJBOUND_CLI");
    if (cli == nullptr || std::string(cli).empty()) {
        report("9 (bench determinism)", false, "PROJBOUND_CLI not set");
        report("figures (SVG manifest)", false, "PROJBOUND_CLI not set");
    } else {
        std::error_code ec;
        const fs::path workdir = fs::temp_directory_path() / ("projbound_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(workdir, ec);
        criterion_9(cli, workdir);
        criterion_figures(cli, workdir);
        fs::remove_all(workdir, ec);
    }

    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
