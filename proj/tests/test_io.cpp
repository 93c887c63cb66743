#include <catch2/catch.hpp>

#include <sstream>

#include "projbound/io.hpp"
#include "projbound/report.hpp"
#include "projbound/svg.hpp"
#include "test_support.hpp"

using namespace projbound;

TEST_CASE("matrix parsing: real and complex files") {
    std::istringstream real_file("2 2 real\n1 2\n3 4\n");
    const ComplexMatrix r = parse_matrix(real_file);
    CHECK(r(1, 0) == Complex(3.0, 0.0));

    std::istringstream cplx_file("1 3 complex\n1.5+2e-3i -3i 2.5\n");
    const ComplexMatrix c = parse_matrix(cplx_file);
    CHECK(c(0, 0) == Complex(1.5, 2e-3));
    CHECK(c(0, 1) == Complex(0.0, -3.0));
    CHECK(c(0, 2) == Complex(2.5, 0.0));
}

TEST_CASE("complex token edge cases") {
    CHECK(parse_complex_token("1e-3+2.5e+4i") == Complex(1e-3, 2.5e4));
    CHECK(parse_complex_token("-1.25-0.5i") == Complex(-1.25, -0.5));
    CHECK(parse_complex_token("7") == Complex(7.0, 0.0));
    CHECK_THROWS_AS(parse_complex_token("abc"), ParseError);
    CHECK_THROWS_AS(parse_complex_token(""), ParseError);
}

TEST_CASE("matrix files round-trip at full precision") {
    Xoshiro256PlusPlus rng(64);
    const ComplexMatrix m = random_gaussian_matrix(rng, 3, 4);
    std::istringstream back(format_matrix(m));
    const ComplexMatrix m2 = parse_matrix(back);
    CHECK(m.entries() == m2.entries());  // bitwise

    const ComplexMatrix real_only = ComplexMatrix::diagonal({1.0 / 3.0, 2.0});
    std::istringstream back2(format_matrix(real_only));
    CHECK(parse_matrix(back2).entries() == real_only.entries());
}

TEST_CASE("malformed matrix files raise ParseError") {
    std::istringstream bad_header("2 two real\n1 2\n3 4\n");
    CHECK_THROWS_AS(parse_matrix(bad_header), ParseError);
    std::istringstream short_row("2 2 real\n1 2\n3\n");
    CHECK_THROWS_AS(parse_matrix(short_row), ParseError);
    std::istringstream bad_token("1 1 real\nxyz\n");
    CHECK_THROWS_AS(parse_matrix(bad_token), ParseError);
    std::istringstream non_finite("1 1 real\nnan\n");
    CHECK_THROWS_AS(parse_matrix(non_finite), ParseError);
    std::istringstream truncated("3 2 real\n1 2\n");
    CHECK_THROWS_AS(parse_matrix(truncated), ParseError);
}

TEST_CASE("grid specs") {
    const std::vector<double> g = parse_grid_spec("0.11:0.99:90");
    REQUIRE(g.size() == 90);
    CHECK(g.front() == Approx(0.11).margin(0));
    CHECK(g.back() == Approx(0.99).margin(1e-15));

    CHECK(parse_grid_spec("1:2:1") == std::vector<double>{1.0});
    CHECK_THROWS_AS(parse_grid_spec("0.1:0.9:0"), ParseError);
    CHECK_THROWS_AS(parse_grid_spec("0.1:0.9:2.5"), ParseError);
    CHECK_THROWS_AS(parse_grid_spec("abc"), ParseError);
}

TEST_CASE("full-precision formatting round-trips doubles") {
    for (double x : {1.0 / 3.0, 1e-300, 99.0 / 100.0 + 4.0 / 9.0, 1e17}) {
        const std::string s = format_full(x);
        CHECK(std::stod(s) == x);
    }
}

TEST_CASE("svg charts embed their series verbatim") {
    const std::vector<double> x{0.1, 0.2, 0.3};
    const std::vector<SvgSeries> series{{"CHEN_UP", {5.0, 4.0, 3.5}}, {"EXACT", {1.0, 1.0, 1.0}}};
    const std::string svg = render_line_chart("test", "epsilon", x, series);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);

    const auto parsed = parse_chart_metadata(svg);
    REQUIRE(parsed.size() == 3);  // epsilon + 2 series
    CHECK(parsed[0].name == "epsilon");
    CHECK(parsed[1].name == "CHEN_UP");
    CHECK(parsed[1].values == series[0].values);  // bitwise through %.17g
    CHECK(parsed[2].values == series[1].values);
}

TEST_CASE("csv and json reports carry the schema basics") {
    const PerturbationPair pair = test_support::example_41_pair(0.5);
    const auto records = classical_bounds(pair);
    const std::string csv = bounds_csv(records, pair.q.primal, pair.q.dual);
    CHECK(csv.rfind("bound_id,kind,target", 0) == 0);
    CHECK(csv.find("CHEN_UP") != std::string::npos);
    CHECK(csv.find("\r\n") == std::string::npos);  // \n endings only

    const nlohmann::json j = bounds_json(records, pair.q.primal, pair.q.dual);
    CHECK(j["schema_version"] == 1);
    CHECK(j.contains("rows"));
    CHECK(j["rows"].size() == records.size());

    const auto ids = all_identities(pair);
    CHECK(identities_all_ok(ids));
    const std::string icsv = identities_csv(ids);
    CHECK(icsv.find("IDE_1_1") != std::string::npos);
    CHECK(icsv.find("violated") == std::string::npos);
}
