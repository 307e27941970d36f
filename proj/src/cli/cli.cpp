#include "urania/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "urania/errors.hpp"
#include "urania/geocentric.hpp"
#include "urania/simd.hpp"

namespace urania::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
    std::string elements;
    std::string tables;
    std::string earth = "earth";
    bool json = false;
    bool no_timestamp = false;
    int precision = 4;
};

void add_common(CLI::App* cmd, Common& c, bool with_tables) {
    cmd->add_option("--elements", c.elements, "Orbital elements CSV")->default_str(default_elements_path().string());
    if (with_tables) {
        cmd->add_option("--tables", c.tables, "Table directory (default: $URANIA_DATA_DIR or ./urania-tables)");
    }
    cmd->add_option("--earth", c.earth, "Name of the Earth record")->capture_default_str();
    cmd->add_flag("--json", c.json, "Machine-readable output");
    cmd->add_flag("--no-timestamp", c.no_timestamp, "Omit timestamps and wall times");
    cmd->add_option("--precision", c.precision, "Decimal places for degrees")->check(CLI::Range(0, 17))->capture_default_str();
}

ElementsDataset load(const Common& c) {
    return load_elements(c.elements.empty() ? default_elements_path() : std::filesystem::path(c.elements));
}

std::filesystem::path table_dir(const Common& c) {
    return c.tables.empty() ? default_table_dir() : std::filesystem::path(c.tables);
}

std::string fixed(double x, int places) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(places) << x;
    return os.str();
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

void stamp(std::ostream& out, const Common& c) {
    if (c.no_timestamp || c.json) return;
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# generated " << buf << '\n';
}

json ops_json(const OpCounter& o) {
    return {{"adds", o.adds},
            {"muls", o.muls},
            {"transcendental_calls", o.transcendental_calls},
            {"row_accesses", o.row_accesses},
            {"total", o.total()}};
}

std::string census_line(const CensusReport& r) {
    return "census: single_rows=" + std::to_string(r.single_rows) + " double_cells=" + std::to_string(r.double_cells) +
           " total_entries=" + std::to_string(r.total_entries()) + " solver_calls=" + std::to_string(r.solver_calls) +
           " arithmetic_ops=" + std::to_string(r.arithmetic_ops);
}

json census_json(const CensusReport& r) {
    json lines = json::array();
    for (const auto& l : r.lines) {
        lines.push_back({{"name", l.name},
                         {"kind", l.kind},
                         {"entries", l.entries},
                         {"solver_calls", l.solver_calls},
                         {"arithmetic_ops", l.arithmetic_ops}});
    }
    return {{"lines", lines},
            {"single_rows", r.single_rows},
            {"double_cells", r.double_cells},
            {"total_entries", r.total_entries()},
            {"solver_calls", r.solver_calls},
            {"arithmetic_ops", r.arithmetic_ops}};
}

// gen ------------------------------------------------------------------------

struct GenArgs {
    Common common;
    std::vector<std::string> planets;
    bool all = false;
    double step = 1.0;
    std::string grid;
    std::string out_dir;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    const auto data = load(a.common);
    std::vector<OrbitalElements> bodies;
    if (a.all) {
        bodies = data.planets();
    } else {
        for (const auto& p : a.planets) bodies.push_back(data.at(p));
    }
    if (bodies.empty()) throw CLI::ValidationError("gen", "name at least one --planet or pass --all");

    const std::filesystem::path dir = a.out_dir.empty() ? table_dir(a.common) : std::filesystem::path(a.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create table directory '" + dir.string() + "': " + ec.message());

    CensusConfig cfg;
    cfg.step = a.step;
    cfg.single_entry = bodies;
    if (!a.grid.empty()) {
        std::tie(cfg.n_u, cfg.n_v) = parse_grid(a.grid);
        cfg.earth = data.at(a.common.earth);
        for (const auto& b : bodies) {
            if (b.name != cfg.earth.name) cfg.double_entry.push_back(b);
        }
    }

    json files = json::array();
    for (const auto& el : cfg.single_entry) {
        const auto t = build_planet_table(el, cfg.step);
        const auto path = dir / table_file_name(t);
        write_table(AnyTable{t}, path);
        files.push_back(path.string());
        if (!a.common.json) out << "wrote " << path.string() << " (" << t.rows.size() << " rows)\n";
    }
    for (const auto& el : cfg.double_entry) {
        const auto t = build_double_entry(el, cfg.earth, cfg.n_u, cfg.n_v);
        const auto path = dir / table_file_name(t);
        write_table(AnyTable{t}, path);
        files.push_back(path.string());
        if (!a.common.json) out << "wrote " << path.string() << " (" << t.cells() << " cells)\n";
    }
    const auto census = calculation_census(cfg);
    if (a.common.json) {
        out << json{{"files", files}, {"census", census_json(census)}}.dump(2) << '\n';
    } else {
        out << census_line(census) << '\n';
    }
    return kExitOk;
}

// query ----------------------------------------------------------------------

struct QueryArgs {
    Common common;
    std::string mode = "direct";
    std::string planet;
    double jd = 0.0;
    std::string date;
    bool count_ops = false;
    bool helio = false;
    bool have_jd = false;
};

int cmd_query(const QueryArgs& a, std::ostream& out) {
    const auto data = load(a.common);
    const auto& planet = data.at(a.planet);
    const auto& earth = data.at(a.common.earth);
    const JulianDate jd = a.have_jd ? JulianDate{a.jd} : parse_date(a.date);
    const int dp = a.common.precision;

    TableSet tables;
    const bool table_mode = a.mode == "table";
    if (table_mode) {
        const auto dir = table_dir(a.common);
        try {
            tables = TableSet::load_directory(dir);
        } catch (const IoError&) {
            throw NotFound("no tables in '" + dir.string() + "'; run `urania gen --planet " + planet.name +
                           " --double 64x64` first");
        }
        if (tables.pair(planet.name, earth.name) == nullptr) {
            throw NotFound("no double-entry table for " + planet.name + "/" + earth.name + " in '" + dir.string() +
                           "'; run `urania gen --planet " + planet.name + " --double 64x64` first");
        }
    }
    const auto q = counted_query(table_mode ? QueryMode::table : QueryMode::direct, planet, earth, tables, jd);

    json j{{"planet", planet.name},
           {"mode", a.mode},
           {"jd", jd.jd},
           {"lambda", q.position.lambda},
           {"beta", q.position.beta},
           {"delta", q.position.Delta}};
    std::ostringstream helio;
    if (a.helio) {
        if (table_mode) {
            const auto* single = tables.single(planet.name);
            if (single == nullptr) {
                throw NotFound("no single-entry table for " + planet.name + "; run `urania gen --planet " +
                               planet.name + "` first");
            }
            const auto p = planet_at_table(*single, jd);
            j["helio"] = {{"nu_aph", p.nu_aph}, {"r", p.r}};
            helio << "helio: nu_aph=" << fixed(p.nu_aph, dp) << " deg r=" << fixed(p.r, 6) << " AU\n";
        } else {
            const auto s = heliocentric_state(planet, jd);
            j["helio"] = {{"l", s.l}, {"b", s.b}, {"r", s.r}};
            helio << "helio: l=" << fixed(s.l, dp) << " deg b=" << fixed(s.b, dp) << " deg r=" << fixed(s.r, 6)
                  << " AU\n";
        }
    }
    if (a.count_ops) j["ops"] = ops_json(q.ops);

    if (a.common.json) {
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "planet: " << planet.name << '\n'
        << "mode: " << a.mode << '\n'
        << "jd: " << fixed(jd.jd, 6) << '\n'
        << "lambda: " << fixed(q.position.lambda, dp) << " deg\n"
        << "beta: " << fixed(q.position.beta, dp) << " deg\n"
        << "delta: " << fixed(q.position.Delta, 6) << " AU\n"
        << helio.str();
    if (a.count_ops) out << "ops: " << q.ops << '\n';
    return kExitOk;
}

// compare --------------------------------------------------------------------

struct CompareArgs {
    Common common;
    std::string planet;
    std::string kind = "double";
    double start_jd = 2451545.0;
    double span_days = 0.0;
    std::size_t samples = 1000;
    double step = 1.0;
    std::string grid = "64x64";
    double max_lambda_err = -1.0;
    bool from_files = false;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
    const auto data = load(a.common);
    const auto& planet = data.at(a.planet);
    const auto& earth = data.at(a.common.earth);
    const double span = a.span_days > 0.0 ? a.span_days
                        : a.kind == "single" ? planet.P
                                             : synodic_period(planet, earth);
    CompareReport rep;
    TableSet files;
    if (a.from_files) files = TableSet::load_directory(table_dir(a.common));
    if (a.kind == "single") {
        if (a.from_files) {
            const auto* t = files.single(planet.name);
            if (t == nullptr) throw NotFound("no single-entry table for " + planet.name);
            rep = compare_single(*t, a.start_jd, span, a.samples);
        } else {
            rep = compare_single(build_planet_table(planet, a.step), a.start_jd, span, a.samples);
        }
    } else {
        if (a.from_files) {
            const auto* t = files.pair(planet.name, earth.name);
            if (t == nullptr) throw NotFound("no double-entry table for " + planet.name + "/" + earth.name);
            rep = compare_double(*t, a.start_jd, span, a.samples);
        } else {
            const auto [nu, nv] = parse_grid(a.grid);
            rep = compare_double(build_double_entry(planet, earth, nu, nv), a.start_jd, span, a.samples);
        }
    }
    const bool over = a.max_lambda_err >= 0.0 && rep.lambda.max > a.max_lambda_err;

    if (a.common.json) {
        auto stats = [](const ErrorStats& s) { return json{{"max", s.max}, {"mean", s.mean}}; };
        json j{{"planet", rep.planet},
               {"kind", rep.kind},
               {"start_jd", rep.start_jd},
               {"end_jd", rep.end_jd},
               {"samples", rep.samples},
               {"config", rep.config},
               {"lambda", stats(rep.lambda)},
               {"beta", stats(rep.beta)},
               {"delta", stats(rep.delta)}};
        if (a.max_lambda_err >= 0.0) j["threshold_exceeded"] = over;
        out << j.dump(2) << '\n';
    } else {
        stamp(out, a.common);
        const char* ang = rep.kind == "single" ? "nu_aph" : "lambda";
        const char* dist = rep.kind == "single" ? "r" : "delta";
        out << "compare " << rep.planet << " (" << rep.config << ")\n"
            << "jd range: " << fixed(rep.start_jd, 6) << " .. " << fixed(rep.end_jd, 6) << ", samples " << rep.samples
            << '\n'
            << ang << " error deg: max " << sci(rep.lambda.max) << " mean " << sci(rep.lambda.mean) << '\n';
        if (rep.kind == "double") {
            out << "beta error deg: max " << sci(rep.beta.max) << " mean " << sci(rep.beta.mean) << '\n';
        }
        out << dist << " error AU: max " << sci(rep.delta.max) << " mean " << sci(rep.delta.mean) << '\n';
        if (over) out << "FAIL: max " << ang << " error exceeds " << sci(a.max_lambda_err) << " deg\n";
    }
    return over ? kExitFailure : kExitOk;
}

// bench ----------------------------------------------------------------------

struct BenchArgs {
    Common common;
    std::string planet = "jupiter";
    std::size_t queries = 10000;
    double start_jd = 2451545.0;
    double span_days = 36525.0;
    std::string grid = "64x64";
    bool from_files = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    const auto data = load(a.common);
    const auto& planet = data.at(a.planet);
    const auto& earth = data.at(a.common.earth);
    DoubleEntryTable table;
    if (a.from_files) {
        const auto files = TableSet::load_directory(table_dir(a.common));
        const auto* t = files.pair(planet.name, earth.name);
        if (t == nullptr) throw NotFound("no double-entry table for " + planet.name + "/" + earth.name);
        table = *t;
    } else {
        const auto [nu, nv] = parse_grid(a.grid);
        table = build_double_entry(planet, earth, nu, nv);
    }
    const auto rep = run_bench(planet, earth, table, a.queries, a.start_jd, a.span_days);
    const bool contract = rep.table.transcendental_calls == 0 && rep.direct.transcendental_calls > 0;
    const double n = static_cast<double>(rep.queries);
    const double ratio = rep.table.arithmetic() ? static_cast<double>(rep.direct.arithmetic()) /
                                                      static_cast<double>(rep.table.arithmetic())
                                                : 0.0;
    if (a.common.json) {
        json j{{"planet", rep.planet},
               {"queries", rep.queries},
               {"direct", ops_json(rep.direct)},
               {"table", ops_json(rep.table)},
               {"arithmetic_ratio", ratio},
               {"zero_transcendental_contract", contract}};
        if (!a.common.no_timestamp) {
            j["seconds"] = {{"direct", rep.direct_seconds},
                            {"table", rep.table_seconds},
                            {"table_batch", rep.batch_seconds},
                            {"batch_isa", rep.batch_isa}};
        }
        out << j.dump(2) << '\n';
    } else {
        stamp(out, a.common);
        out << "bench " << rep.planet << ": " << rep.queries << " queries\n"
            << "direct ops: " << rep.direct << '\n'
            << "table  ops: " << rep.table << '\n'
            << "per query: direct " << fixed(static_cast<double>(rep.direct.arithmetic()) / n, 1) << " arithmetic ("
            << fixed(static_cast<double>(rep.direct.transcendental_calls) / n, 1) << " transcendental), table "
            << fixed(static_cast<double>(rep.table.arithmetic()) / n, 1) << " arithmetic (0 transcendental)\n"
            << "direct/table arithmetic ratio: " << fixed(ratio, 2) << '\n';
        if (!a.common.no_timestamp) {
            out << "wall: direct " << sci(rep.direct_seconds) << " s, table " << sci(rep.table_seconds)
                << " s, table batch (" << rep.batch_isa << ") " << sci(rep.batch_seconds) << " s\n";
        }
        out << "zero-transcendental contract: " << (contract ? "held" : "VIOLATED") << '\n';
    }
    return contract ? kExitOk : kExitFailure;
}

// census / validate ----------------------------------------------------------

struct CensusArgs {
    Common common;
    double step = 1.0;
    std::string grid = "64x64";
};

int cmd_census(const CensusArgs& a, std::ostream& out) {
    const auto data = load(a.common);
    auto cfg = default_census_config(data);
    cfg.step = a.step;
    std::tie(cfg.n_u, cfg.n_v) = parse_grid(a.grid);
    const auto rep = calculation_census(cfg);
    if (a.common.json) {
        out << census_json(rep).dump(2) << '\n';
        return kExitOk;
    }
    for (const auto& l : rep.lines) {
        out << std::left << std::setw(16) << l.name << std::setw(8) << l.kind << " entries=" << l.entries
            << " solver_calls=" << l.solver_calls << " arithmetic_ops=" << l.arithmetic_ops << '\n';
    }
    out << census_line(rep) << '\n';
    return kExitOk;
}

struct ValidateArgs {
    Common common;
    std::vector<std::string> tables;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
    const auto data = load(a.common);
    ValidateOptions opts;
    for (const auto& t : a.tables) opts.table_files.emplace_back(t);
    const auto results = run_validate(data, opts);
    bool all = true;
    json arr = json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        if (a.common.json) {
            arr.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        } else {
            out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        }
    }
    if (a.common.json) {
        out << json{{"checks", arr}, {"passed", all}}.dump(2) << '\n';
    } else {
        out << (all ? "all checks passed" : "validation FAILED") << '\n';
    }
    return all ? kExitOk : kExitFailure;
}

}  // namespace

std::filesystem::path default_table_dir() {
    if (const char* env = std::getenv("URANIA_DATA_DIR"); env != nullptr && *env != '\0') return env;
    return "urania-tables";
}

std::filesystem::path default_elements_path() { return URANIA_DEFAULT_ELEMENTS; }

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    const bool digits_only = text.find_first_not_of("0123456789x") == std::string::npos;
    if (x == std::string::npos || !digits_only) throw DomainError("grid must look like 64x64, got '" + text + "'");
    try {
        std::size_t used_u = 0, used_v = 0;
        const auto nu = std::stoul(text.substr(0, x), &used_u);
        const auto nv = std::stoul(text.substr(x + 1), &used_v);
        if (used_u != x || used_v != text.size() - x - 1) throw std::invalid_argument("trailing");
        return {nu, nv};
    } catch (const std::logic_error&) {
        throw DomainError("grid must look like 64x64, got '" + text + "'");
    }
}

JulianDate parse_date(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double s = 0.0;
    int used = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%n", &y, &mo, &d, &used) != 3) {
        throw DomainError("date must look like YYYY-MM-DD[THH:MM[:SS]], got '" + text + "'");
    }
    std::string rest = text.substr(static_cast<std::size_t>(used));
    if (!rest.empty()) {
        int used2 = 0;
        if (std::sscanf(rest.c_str(), "T%d:%d%n", &h, &mi, &used2) != 2) {
            throw DomainError("bad time of day in '" + text + "'");
        }
        rest = rest.substr(static_cast<std::size_t>(used2));
        if (!rest.empty()) {
            int used3 = 0;
            if (std::sscanf(rest.c_str(), ":%lf%n", &s, &used3) != 1 || rest.size() != static_cast<std::size_t>(used3)) {
                throw DomainError("bad seconds in '" + text + "'");
            }
        }
    }
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0.0 || s >= 60.0) {
        throw DomainError("time of day out of range in '" + text + "'");
    }
    return calendar_to_jd(y, mo, d, (h * 3600.0 + mi * 60.0 + s) / 86400.0);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"urania: planetary positions from Keplerian elements, directly or from compiled tables"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Compile single- and double-entry tables");
    add_common(g, gen.common, true);
    g->add_option("--planet", gen.planets, "Body to tabulate (repeatable)");
    g->add_flag("--all", gen.all, "Every body except the Earth");
    g->add_option("--step-days", gen.step, "Single-entry row spacing in days")->capture_default_str();
    g->add_option("--double", gen.grid, "Also build double-entry tables, e.g. 64x64");
    g->add_option("--out-dir", gen.out_dir, "Output directory (default: table directory)");

    QueryArgs query;
    auto* q = app.add_subcommand("query", "Geocentric position at one instant");
    add_common(q, query.common, true);
    q->add_option("--mode", query.mode, "direct or table")->check(CLI::IsMember({"direct", "table"}))->capture_default_str();
    q->add_option("--planet", query.planet, "Body name")->required();
    auto* jd_opt = q->add_option("--jd", query.jd, "Julian date");
    auto* date_opt = q->add_option("--date", query.date, "Gregorian date YYYY-MM-DD[THH:MM[:SS]]");
    jd_opt->excludes(date_opt);
    q->add_flag("--count-ops", query.count_ops, "Print the operation tally");
    q->add_flag("--helio", query.helio, "Also print the heliocentric state");

    CompareArgs cmp;
    auto* c = app.add_subcommand("compare", "Table mode against direct mode over a date sweep");
    add_common(c, cmp.common, true);
    c->add_option("--planet", cmp.planet, "Body name")->required();
    c->add_option("--kind", cmp.kind, "double (geocentric) or single (heliocentric anomaly)")
        ->check(CLI::IsMember({"double", "single"}))
        ->capture_default_str();
    c->add_option("--start-jd", cmp.start_jd, "First sample")->capture_default_str();
    c->add_option("--span-days", cmp.span_days, "Sweep length (default: synodic period, or P for single)");
    c->add_option("--samples", cmp.samples, "Number of dates")->capture_default_str();
    c->add_option("--step-days", cmp.step, "Single-entry step when compiling in memory")->capture_default_str();
    c->add_option("--double", cmp.grid, "Double-entry grid when compiling in memory")->capture_default_str();
    c->add_flag("--from-files", cmp.from_files, "Use tables from the table directory instead of compiling");
    c->add_option("--max-lambda-err", cmp.max_lambda_err, "Exit 1 if the max angular error exceeds this (deg)");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Operation counts and timings for both modes");
    add_common(b, bench.common, true);
    b->add_option("--planet", bench.planet, "Body name")->capture_default_str();
    b->add_option("--queries", bench.queries, "Batch size")->capture_default_str();
    b->add_option("--start-jd", bench.start_jd, "First query date")->capture_default_str();
    b->add_option("--span-days", bench.span_days, "Spread of query dates")->capture_default_str();
    b->add_option("--double", bench.grid, "Double-entry grid when compiling in memory")->capture_default_str();
    b->add_flag("--from-files", bench.from_files, "Use tables from the table directory instead of compiling");

    CensusArgs census;
    auto* cs = app.add_subcommand("census", "Count the work of compiling the full table set");
    add_common(cs, census.common, false);
    cs->add_option("--step-days", census.step, "Single-entry row spacing")->capture_default_str();
    cs->add_option("--double", census.grid, "Double-entry grid")->capture_default_str();

    ValidateArgs validate;
    auto* v = app.add_subcommand("validate", "Run the invariant checks end to end");
    add_common(v, validate.common, false);
    v->add_option("--table", validate.tables, "Also verify this table file (repeatable)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "urania: " << e.what() << '\n';
        return kExitUsage;
    }
    query.have_jd = jd_opt->count() > 0;

    try {
        if (g->parsed()) return cmd_gen(gen, out);
        if (q->parsed()) {
            if (!query.have_jd && query.date.empty()) {
                err << "urania: query needs --jd or --date\n";
                return kExitUsage;
            }
            return cmd_query(query, out);
        }
        if (c->parsed()) return cmd_compare(cmp, out);
        if (b->parsed()) return cmd_bench(bench, out);
        if (cs->parsed()) return cmd_census(census, out);
        if (v->parsed()) return cmd_validate(validate, out);
    } catch (const CLI::ValidationError& e) {
        err << "urania: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "urania: parse error: " << e.what() << '\n';
        return kExitIo;
    } catch (const VersionError& e) {
        err << "urania: " << e.what() << '\n';
        return kExitIo;
    } catch (const IoError& e) {
        err << "urania: " << e.what() << '\n';
        return kExitIo;
    } catch (const NotFound& e) {
        err << "urania: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "urania: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace urania::cli
