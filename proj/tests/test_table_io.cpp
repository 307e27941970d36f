#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "urania/errors.hpp"
#include "urania/tables.hpp"

using namespace urania;

namespace {

std::string to_text(const PlanetTable& t) {
    std::ostringstream out;
    write_table(t, out);
    return out.str();
}

std::string to_text(const DoubleEntryTable& t) {
    std::ostringstream out;
    write_table(t, out);
    return out.str();
}

AnyTable from_text(const std::string& text) {
    std::istringstream in(text);
    return read_table(in);
}

std::string replace_line(const std::string& text, const std::string& prefix, const std::string& with) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
        out += (line.rfind(prefix, 0) == 0 ? with : line) + "\n";
    }
    return out;
}

OrbitalElements random_elements(std::mt19937_64& rng, const std::string& name) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto el = fixtures::make(name, 0.3 + 30 * u(rng), 0.95 * u(rng), 20 * u(rng), 360 * u(rng), 360 * u(rng),
                             40 + 10000 * u(rng), 2400000 + 100000 * u(rng));
    if (u(rng) < 0.5) el.corrections.push_back({0.2 * u(rng), 500 + 5000 * u(rng), 360 * u(rng)});
    return el;
}

}  // namespace

TEST_CASE("toy single-entry table round-trips") {
    auto el = fixtures::make("toy", 1.0, 0.1, 0.0, 0.0, 0.0, 24.0, 2451000.5);
    const auto table = build_planet_table(el, 3.0);
    REQUIRE(table.rows.size() == 8);
    const auto back = from_text(to_text(table));
    REQUIRE(std::holds_alternative<PlanetTable>(back));
    CHECK(std::get<PlanetTable>(back) == table);
}

TEST_CASE("randomized tables round-trip bit for bit") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 20; ++k) {
        const auto el = random_elements(rng, "body" + std::to_string(k));
        const auto single = build_planet_table(el, el.P / 64.0);
        const auto s = from_text(to_text(single));
        REQUIRE(std::get<PlanetTable>(s) == single);

        const auto earth = random_elements(rng, "earth");
        const auto dbl = build_double_entry(el, earth, 8 + k % 5, 9 + k % 3);
        const auto d = from_text(to_text(dbl));
        REQUIRE(std::get<DoubleEntryTable>(d) == dbl);
    }
}

TEST_CASE("file round trip and names") {
    const auto dir = std::filesystem::temp_directory_path() / "urania-io-test";
    std::filesystem::create_directories(dir);
    const auto single = build_planet_table(fixtures::mars_like(), 4.0);
    const auto dbl = build_double_entry(fixtures::mars_like(), fixtures::earth_like(), 8, 8);
    CHECK(table_file_name(single) == "mars.single.tbl");
    CHECK(table_file_name(dbl) == "mars-earth.double.tbl");
    write_table(AnyTable{single}, dir / table_file_name(single));
    write_table(AnyTable{dbl}, dir / table_file_name(dbl));
    CHECK(std::get<PlanetTable>(read_table(dir / table_file_name(single))) == single);
    CHECK(std::get<DoubleEntryTable>(read_table(dir / table_file_name(dbl))) == dbl);
    CHECK_THROWS_AS(read_table(dir / "absent.tbl"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("truncated files are parse errors") {
    const auto single = to_text(build_planet_table(fixtures::circular("ring", 1.0, 80.0), 2.0));
    CHECK_THROWS_AS(from_text(single.substr(0, single.size() / 2)), ParseError);
    const auto dbl = to_text(build_double_entry(fixtures::mars_like(), fixtures::earth_like(), 8, 8));
    const auto cut = dbl.substr(0, dbl.rfind('\n', dbl.size() - 2) + 1);  // drop the last cell
    try {
        from_text(cut);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() > 0);
    }
    CHECK_THROWS_AS(from_text(""), ParseError);
}

TEST_CASE("version guard") {
    const auto text = to_text(build_planet_table(fixtures::circular("ring", 1.0, 80.0), 2.0));
    CHECK_THROWS_AS(from_text(replace_line(text, "# urania-table", "# urania-table v99")), VersionError);
    CHECK_THROWS_AS(from_text("not a table\n"), ParseError);
}

TEST_CASE("malformed content names the line") {
    const auto text = to_text(build_planet_table(fixtures::circular("ring", 1.0, 80.0), 2.0));

    // Missing mandatory key.
    CHECK_THROWS_AS(from_text(replace_line(text, "# step=", "# nothing=1")), ParseError);

    // A garbled number on the first data row (line 7 with no corrections).
    const auto bad = replace_line(text, "0,", "0,abc,1,1,1");
    try {
        from_text(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 7);
        CHECK(std::string(e.what()).find("7") != std::string::npos);
    }

    // Wrong field count.
    CHECK_THROWS_AS(from_text(replace_line(text, "0,", "0,0,1")), ParseError);

    // Values that break the table invariants.
    CHECK_THROWS_AS(from_text(replace_line(text, "2,", "2,-5,1,4.5,0.1875")), ParseError);
}

TEST_CASE("unknown header keys are ignored") {
    const auto table = build_planet_table(fixtures::circular("ring", 1.0, 80.0), 2.0);
    const auto text = replace_line(to_text(table), "# step=", "# step=2\n# generator=hand");
    CHECK(std::get<PlanetTable>(from_text(text)) == table);
}
