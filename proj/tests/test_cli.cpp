#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "urania/cli.hpp"
#include "urania/tables.hpp"

using namespace urania;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& leaf = "") const { return (leaf.empty() ? path : path / leaf).string(); }
};

const std::string kElements = URANIA_DEFAULT_ELEMENTS;

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("gen writes single- and double-entry files") {
    TempDir dir("urania-cli-gen");
    auto r = run({"gen", "--planet", "mars", "--step-days", "1", "--elements", kElements, "--tables", dir.str()});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir.path / "mars.single.tbl"));
    CHECK_FALSE(fs::exists(dir.path / "mars-earth.double.tbl"));

    r = run({"gen", "--all", "--double", "16x16", "--elements", kElements, "--tables", dir.str()});
    CHECK(r.code == 0);
    for (const char* p : {"mercury", "venus", "mars", "jupiter", "saturn"}) {
        CHECK(fs::exists(dir.path / (std::string(p) + ".single.tbl")));
        CHECK(fs::exists(dir.path / (std::string(p) + "-earth.double.tbl")));
    }
    CHECK_FALSE(fs::exists(dir.path / "earth.single.tbl"));

    // The census line agrees with calculation_census for the same set.
    CensusConfig cfg;
    const auto data = load_elements(kElements);
    cfg.single_entry = data.planets();
    cfg.double_entry = data.planets();
    cfg.earth = data.earth();
    cfg.step = 1.0;
    cfg.n_u = cfg.n_v = 16;
    const auto census = calculation_census(cfg);
    CHECK(r.out.find("total_entries=" + std::to_string(census.total_entries())) != std::string::npos);
    CHECK(r.out.find("solver_calls=" + std::to_string(census.solver_calls)) != std::string::npos);

    CHECK(run({"gen", "--planet", "pluto", "--elements", kElements, "--tables", dir.str()}).code == 3);
    CHECK(run({"gen", "--planet", "mars", "--double", "4x4", "--elements", kElements, "--tables", dir.str()}).code == 1);
    CHECK(run({"gen", "--planet", "mars", "--double", "banana", "--elements", kElements, "--tables", dir.str()}).code != 0);
}

TEST_CASE("direct query matches the extended-precision oracle") {
    const auto r = run({"query", "--mode", "direct", "--planet", "mars", "--jd", "2451545.0", "--json",
                        "--no-timestamp", "--elements", kElements});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto data = load_elements(kElements);
    const auto& mars = data.at("mars");
    const auto& earth = data.earth();
    const auto o = oracle::geo_from_helio(oracle::helio(mars, oracle::LD(2451545.0) - mars.T_aph.jd),
                                          oracle::helio(earth, oracle::LD(2451545.0) - earth.T_aph.jd));
    CHECK(static_cast<double>(oracle::angle_gap(j["lambda"].get<double>(), o.lambda)) < 1e-9);
    CHECK(std::fabs(j["beta"].get<double>() - static_cast<double>(o.beta)) < 1e-9);
    CHECK(std::fabs(j["delta"].get<double>() - static_cast<double>(o.delta)) < 1e-11);

    const auto text = run({"query", "--mode", "direct", "--planet", "mars", "--jd", "2451545.0", "--no-timestamp",
                           "--elements", kElements});
    CHECK(text.out.find("lambda: 327.9761 deg") != std::string::npos);
    CHECK(text.out.find("delta: 1.849566 AU") != std::string::npos);
    const auto precise = run({"query", "--mode", "direct", "--planet", "mars", "--jd", "2451545.0", "--precision",
                              "7", "--no-timestamp", "--elements", kElements});
    CHECK(precise.out.find("lambda: 327.9760627 deg") != std::string::npos);
}

TEST_CASE("date and julian date spellings give identical output") {
    const std::vector<std::string> common{"query", "--planet", "jupiter", "--mode", "direct", "--count-ops",
                                          "--helio", "--no-timestamp", "--elements", kElements};
    auto a = common, b = common;
    a.insert(a.end(), {"--jd", "2451545.0"});
    b.insert(b.end(), {"--date", "2000-01-01T12:00"});
    const auto ra = run(a), rb = run(b);
    CHECK(ra.code == 0);
    CHECK(ra.out == rb.out);
    CHECK(ra.out == run(a).out);  // deterministic

    CHECK(cli::parse_date("2000-01-01T12:00").jd == 2451545.0);
    CHECK(cli::parse_date("1999-12-31").jd == 2451543.5);
    CHECK(cli::parse_date("2000-01-01T18:00:00").jd == 2451545.25);
    CHECK_THROWS(cli::parse_date("2000-13-01"));
    CHECK_THROWS(cli::parse_date("yesterday"));

    auto both = common;
    both.insert(both.end(), {"--jd", "1", "--date", "2000-01-01"});
    CHECK(run(both).code == 2);
    CHECK(run(common).code == 2);
}

TEST_CASE("table query reads compiled files and reports zero transcendental calls") {
    TempDir dir("urania-cli-query");
    const std::vector<std::string> q{"query", "--planet", "mars", "--mode", "table", "--jd", "2451545.0",
                                     "--count-ops", "--json", "--no-timestamp", "--elements", kElements,
                                     "--tables", dir.str()};
    const auto missing = run(q);
    CHECK(missing.code == 3);
    CHECK(missing.err.find("urania gen") != std::string::npos);

    REQUIRE(run({"gen", "--planet", "mars", "--double", "64x64", "--elements", kElements, "--tables", dir.str()}).code == 0);
    const auto r = run(q);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["ops"]["transcendental_calls"].get<int>() == 0);
    const auto direct = nlohmann::json::parse(run({"query", "--planet", "mars", "--mode", "direct", "--jd",
                                                   "2451545.0", "--json", "--elements", kElements}).out);
    // Measured 64x64 Mars bound (see the compare sweep in the acceptance suite).
    CHECK(static_cast<double>(oracle::angle_gap(j["lambda"].get<double>(), direct["lambda"].get<double>())) < 1.0);
}

TEST_CASE("compare thresholds and exit codes") {
    TempDir dir("urania-cli-compare");
    write_file(dir.path / "synthetic.csv",
               "name,a_au,e,i_deg,Omega_deg,omega_deg,P_days,T_aph_jd\n"
               "earth,1,0.0167,0,0,103,365.25,2451364\n"
               "ring,2,0,0,0,0,700,2451000\n");
    const auto ring = run({"compare", "--planet", "ring", "--kind", "single", "--samples", "1000",
                           "--max-lambda-err", "1e-9", "--no-timestamp", "--elements", dir.str("synthetic.csv")});
    CHECK(ring.code == 0);

    const auto mars = run({"compare", "--planet", "jupiter", "--samples", "200", "--max-lambda-err", "1e-6",
                           "--no-timestamp", "--elements", kElements});
    CHECK(mars.code == 1);
    CHECK(mars.out.find("FAIL") != std::string::npos);

    const auto j = nlohmann::json::parse(run({"compare", "--planet", "jupiter", "--samples", "200", "--json",
                                              "--no-timestamp", "--elements", kElements}).out);
    CHECK(j["lambda"]["max"].get<double>() >= j["lambda"]["mean"].get<double>());
    CHECK(j["lambda"]["mean"].get<double>() >= 0.0);
    CHECK(j["samples"].get<int>() == 200);
    CHECK(j["end_jd"].get<double>() > j["start_jd"].get<double>());

    CHECK(run({"compare", "--planet", "jupiter", "--from-files", "--tables", dir.str("none"), "--elements",
               kElements}).code == 3);
    CHECK(run({"compare", "--planet", "jupiter", "--kind", "triple", "--elements", kElements}).code == 2);
}

TEST_CASE("bench reports both modes") {
    const auto r = run({"bench", "--planet", "mars", "--queries", "500", "--json", "--no-timestamp", "--elements",
                        kElements});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["table"]["transcendental_calls"].get<long>() == 0);
    CHECK(j["direct"]["transcendental_calls"].get<long>() > 0);
    CHECK(j["table"]["total"].get<long>() < j["direct"]["total"].get<long>());
}

TEST_CASE("census subcommand") {
    const auto r = run({"census", "--json", "--elements", kElements});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto expected = calculation_census(cli::default_census_config(load_elements(kElements)));
    CHECK(j["total_entries"].get<std::uint64_t>() == expected.total_entries());
    CHECK(j["single_rows"].get<std::uint64_t>() == expected.single_rows);
    CHECK(j["double_cells"].get<std::uint64_t>() == expected.double_cells);
    CHECK(j["lines"].size() == expected.lines.size());
    CHECK(run({"census", "--elements", kElements}).out == run({"census", "--elements", kElements}).out);
}

TEST_CASE("validate passes on the default dataset and names failures") {
    TempDir dir("urania-cli-validate");
    auto r = run({"validate", "--no-timestamp", "--elements", kElements});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);

    // A high-eccentricity body still passes the solver checks.
    write_file(dir.path / "eccentric.csv",
               "name,a_au,e,i_deg,Omega_deg,omega_deg,P_days,T_aph_jd\n"
               "earth,1,0.0167,0,0,103,365.25,2451364\n"
               "comet,3,0.97,12,40,80,1900,2451000\n");
    r = run({"validate", "--no-timestamp", "--elements", dir.str("eccentric.csv")});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS solver-grid") != std::string::npos);

    const auto table = build_planet_table(fixtures::mars_like(), 4.0);
    std::ostringstream text;
    write_table(table, text);
    std::string body = text.str();
    write_file(dir.path / "good.tbl", body);
    write_file(dir.path / "bad.tbl", body.substr(0, body.size() * 2 / 3));
    r = run({"validate", "--no-timestamp", "--elements", kElements, "--table", dir.str("good.tbl"), "--table",
             dir.str("bad.tbl")});
    CHECK(r.code == 1);
    CHECK(r.out.find("PASS table-file:good.tbl") != std::string::npos);
    CHECK(r.out.find("FAIL table-file:bad.tbl") != std::string::npos);
}

TEST_CASE("exit-code contract") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"query", "--planet", "mars"}).code == 2);
    CHECK(run({"query", "--planet", "mars", "--jd", "2451545", "--mode", "sideways"}).code == 2);
    CHECK(run({"query", "--planet", "mars", "--jd", "2451545", "--elements", "/no/such.csv"}).code == 3);
    CHECK(run({"query", "--planet", "pluto", "--jd", "2451545", "--elements", kElements}).code == 3);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("grid parsing and default table directory") {
    CHECK(cli::parse_grid("64x64") == std::pair<std::size_t, std::size_t>{64, 64});
    CHECK(cli::parse_grid("8x16") == std::pair<std::size_t, std::size_t>{8, 16});
    CHECK_THROWS(cli::parse_grid("64"));
    CHECK_THROWS(cli::parse_grid("x64"));
    CHECK_THROWS(cli::parse_grid("-8x8"));
    CHECK_FALSE(cli::default_table_dir().empty());
}
