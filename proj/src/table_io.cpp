#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "detail/compile_impl.hpp"
#include "urania/errors.hpp"
#include "urania/tables.hpp"

namespace urania {

namespace {

constexpr std::string_view kMagic = "urania-table v";

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_elements(std::ostream& out, const char* key, const OrbitalElements& el) {
    out << "# " << key << ": a=" << fmt17(el.a) << " e=" << fmt17(el.e) << " i=" << fmt17(el.i)
        << " Omega=" << fmt17(el.Omega) << " omega=" << fmt17(el.omega) << " P=" << fmt17(el.P)
        << " T_aph=" << fmt17(el.T_aph.jd) << '\n';
}

void write_corrections(std::ostream& out, const char* key, const OrbitalElements& el) {
    if (el.corrections.empty()) return;
    out << "# " << key << ": k=" << el.corrections.size();
    for (std::size_t j = 0; j < el.corrections.size(); ++j) {
        const auto& c = el.corrections[j];
        const auto n = std::to_string(j + 1);
        out << "; amp_" << n << '=' << fmt17(c.amplitude) << " per_" << n << '=' << fmt17(c.period)
            << " ph_" << n << '=' << fmt17(c.phase);
    }
    out << '\n';
}

// Parsing ------------------------------------------------------------------

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || seps.find(s[i]) != std::string_view::npos) {
            auto tok = trim(s.substr(start, i - start));
            if (!tok.empty()) out.push_back(tok);
            start = i + 1;
        }
    }
    return out;
}

std::optional<double> to_double(std::string_view s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<long long> to_int(std::string_view s) {
    long long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues parse_pairs(std::string_view text, std::size_t line, std::string_view seps) {
    KeyValues kv;
    for (auto tok : split(text, seps)) {
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw ParseError(line, "expected key=value, got '" + std::string(tok) + "'");
        }
        kv.emplace(std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
    }
    return kv;
}

double number_field(const KeyValues& kv, std::string_view key, std::size_t line) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(line, "missing field '" + std::string(key) + "'");
    const auto v = to_double(it->second);
    if (!v) throw ParseError(line, "field '" + std::string(key) + "' is not a number: '" + it->second + "'");
    return *v;
}

struct HeaderLine {
    std::string value;
    std::size_t line = 0;
};

void parse_elements_into(OrbitalElements& el, const HeaderLine& h) {
    const auto kv = parse_pairs(h.value, h.line, " \t");
    el.a = number_field(kv, "a", h.line);
    el.e = number_field(kv, "e", h.line);
    el.i = number_field(kv, "i", h.line);
    el.Omega = number_field(kv, "Omega", h.line);
    el.omega = number_field(kv, "omega", h.line);
    el.P = number_field(kv, "P", h.line);
    el.T_aph.jd = number_field(kv, "T_aph", h.line);
}

void parse_corrections_into(OrbitalElements& el, const HeaderLine& h) {
    const auto groups = split(h.value, ";");
    if (groups.empty()) throw ParseError(h.line, "empty corrections header");
    const auto head = parse_pairs(groups[0], h.line, " \t");
    const double k = number_field(head, "k", h.line);
    if (k < 0 || k != static_cast<double>(static_cast<std::size_t>(k)) ||
        groups.size() != static_cast<std::size_t>(k) + 1) {
        throw ParseError(h.line, "corrections count k does not match the listed terms");
    }
    KeyValues all;
    for (std::size_t g = 1; g < groups.size(); ++g) all.merge(parse_pairs(groups[g], h.line, " \t"));
    for (std::size_t j = 1; j <= static_cast<std::size_t>(k); ++j) {
        const auto n = std::to_string(j);
        el.corrections.push_back({number_field(all, "amp_" + n, h.line), number_field(all, "per_" + n, h.line),
                                  number_field(all, "ph_" + n, h.line)});
    }
}

struct Header {
    std::map<std::string, HeaderLine, std::less<>> sections;  // "elements", "columns", ...
    KeyValues pairs;
    std::map<std::string, std::size_t, std::less<>> pair_lines;
};

const HeaderLine& require_section(const Header& h, std::string_view key) {
    const auto it = h.sections.find(key);
    if (it == h.sections.end()) throw ParseError(0, "missing mandatory header '" + std::string(key) + "'");
    return it->second;
}

const std::string& require_pair(const Header& h, std::string_view key) {
    const auto it = h.pairs.find(key);
    if (it == h.pairs.end()) throw ParseError(0, "missing mandatory header key '" + std::string(key) + "'");
    return it->second;
}

std::size_t grid_field(const Header& h, std::string_view key) {
    const auto& text = require_pair(h, key);
    const auto v = to_int(text);
    if (!v || *v <= 0) throw ParseError(h.pair_lines.at(std::string(key)), "bad " + std::string(key) + " '" + text + "'");
    return static_cast<std::size_t>(*v);
}

void record_header(Header& h, std::string_view body, std::size_t line) {
    static constexpr std::string_view kSections[] = {"elements", "earth_elements", "corrections",
                                                     "earth_corrections", "columns"};
    const auto colon = body.find(':');
    if (colon != std::string_view::npos) {
        const auto key = trim(body.substr(0, colon));
        for (auto s : kSections) {
            if (key == s) {
                h.sections[std::string(key)] = {std::string(trim(body.substr(colon + 1))), line};
                return;
            }
        }
    }
    if (body.find('=') == std::string_view::npos) return;  // free-form comment
    const auto kv = parse_pairs(body, line, " \t,");
    for (const auto& [k, v] : kv) {
        h.pairs[k] = v;
        h.pair_lines[k] = line;
    }
}

void expect_columns(const Header& h, std::string_view expected) {
    const auto& cols = require_section(h, "columns");
    std::string compact;
    for (char c : cols.value) {
        if (c != ' ' && c != '\t') compact += c;
    }
    if (compact != expected) {
        throw ParseError(cols.line, "unexpected columns '" + cols.value + "', wanted '" + std::string(expected) + "'");
    }
}

struct DataRow {
    std::vector<std::string_view> fields;
    std::size_t line;
};

PlanetTable assemble_single(const Header& h, const std::vector<DataRow>& data) {
    PlanetTable t;
    t.elements.name = require_pair(h, "name");
    parse_elements_into(t.elements, require_section(h, "elements"));
    if (auto it = h.sections.find("corrections"); it != h.sections.end()) {
        parse_corrections_into(t.elements, it->second);
    }
    const auto& step_text = require_pair(h, "step");
    const auto step = to_double(step_text);
    if (!step) throw ParseError(h.pair_lines.at("step"), "bad step '" + step_text + "'");
    t.step = *step;
    expect_columns(h, "t,nu_aph,r,motion_day,motion_hour");

    for (const auto& row : data) {
        if (row.fields.size() != 5) {
            throw ParseError(row.line, "expected 5 fields, found " + std::to_string(row.fields.size()));
        }
        double v[5];
        for (int c = 0; c < 5; ++c) {
            const auto x = to_double(row.fields[c]);
            if (!x) throw ParseError(row.line, "not a number: '" + std::string(row.fields[c]) + "'");
            v[c] = *x;
        }
        t.rows.push_back({v[0], v[1], v[2], v[3], v[4]});
    }
    if (!(t.step > 0.0 && t.elements.P > 0.0)) throw ParseError(h.pair_lines.at("step"), "step and period must be positive");
    const std::size_t expected = detail::single_row_count(t.elements.P, t.step);
    if (t.rows.size() != expected) {
        const std::size_t last = data.empty() ? 0 : data.back().line;
        throw ParseError(last, "truncated table: expected " + std::to_string(expected) + " rows, found " +
                                   std::to_string(t.rows.size()));
    }
    return t;
}

DoubleEntryTable assemble_double(const Header& h, const std::vector<DataRow>& data) {
    DoubleEntryTable t;
    t.planet.name = require_pair(h, "name");
    t.earth.name = require_pair(h, "earth");
    parse_elements_into(t.planet, require_section(h, "elements"));
    parse_elements_into(t.earth, require_section(h, "earth_elements"));
    if (auto it = h.sections.find("corrections"); it != h.sections.end()) parse_corrections_into(t.planet, it->second);
    if (auto it = h.sections.find("earth_corrections"); it != h.sections.end()) {
        parse_corrections_into(t.earth, it->second);
    }
    t.n_u = grid_field(h, "n_u");
    t.n_v = grid_field(h, "n_v");
    expect_columns(h, "iu,iv,lambda,beta,delta");
    const std::size_t n = t.n_u * t.n_v;
    if (data.size() > n) throw ParseError(data[n].line, "more rows than n_u x n_v");
    for (std::size_t k = 0; k < data.size(); ++k) {
        const auto& row = data[k];
        if (row.fields.size() != 5) {
            throw ParseError(row.line, "expected 5 fields, found " + std::to_string(row.fields.size()));
        }
        const auto iu = to_int(row.fields[0]);
        const auto iv = to_int(row.fields[1]);
        if (!iu || !iv) throw ParseError(row.line, "grid indices must be integers");
        if (static_cast<std::size_t>(*iu) != k / t.n_v || static_cast<std::size_t>(*iv) != k % t.n_v) {
            throw ParseError(row.line, "cell out of order: expected (" + std::to_string(k / t.n_v) + ", " +
                                           std::to_string(k % t.n_v) + ")");
        }
        double v[3];
        for (int c = 0; c < 3; ++c) {
            const auto x = to_double(row.fields[2 + c]);
            if (!x) throw ParseError(row.line, "not a number: '" + std::string(row.fields[2 + c]) + "'");
            v[c] = *x;
        }
        t.lambda.push_back(v[0]);
        t.beta.push_back(v[1]);
        t.delta.push_back(v[2]);
    }
    if (data.size() != n) {
        const std::size_t last = data.empty() ? 0 : data.back().line;
        throw ParseError(last, "truncated table: expected " + std::to_string(n) + " cells, found " +
                                   std::to_string(data.size()));
    }
    return t;
}

}  // namespace

void write_table(const PlanetTable& table, std::ostream& out) {
    out << "# " << kMagic << kTableFormatVersion << '\n';
    out << "# kind=single\n";
    out << "# name=" << table.elements.name << '\n';
    write_elements(out, "elements", table.elements);
    write_corrections(out, "corrections", table.elements);
    out << "# step=" << fmt17(table.step) << '\n';
    out << "# columns: t,nu_aph,r,motion_day,motion_hour\n";
    for (const auto& row : table.rows) {
        out << fmt17(row.t) << ',' << fmt17(row.nu_aph) << ',' << fmt17(row.r) << ',' << fmt17(row.motion_day)
            << ',' << fmt17(row.motion_hour) << '\n';
    }
}

void write_table(const DoubleEntryTable& table, std::ostream& out) {
    out << "# " << kMagic << kTableFormatVersion << '\n';
    out << "# kind=double\n";
    out << "# name=" << table.planet.name << ",earth=" << table.earth.name << '\n';
    write_elements(out, "elements", table.planet);
    write_corrections(out, "corrections", table.planet);
    write_elements(out, "earth_elements", table.earth);
    write_corrections(out, "earth_corrections", table.earth);
    out << "# n_u=" << table.n_u << " n_v=" << table.n_v << '\n';
    out << "# columns: iu,iv,lambda,beta,delta\n";
    for (std::size_t k = 0; k < table.cells(); ++k) {
        out << k / table.n_v << ',' << k % table.n_v << ',' << fmt17(table.lambda[k]) << ','
            << fmt17(table.beta[k]) << ',' << fmt17(table.delta[k]) << '\n';
    }
}

void write_table(const AnyTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    std::visit([&](const auto& t) { write_table(t, out); }, table);
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

AnyTable read_table(std::istream& in) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
    if (lines.empty()) throw ParseError(0, "empty table file");

    const auto first = trim(lines[0]);
    if (first.size() < 2 || first.substr(0, 2) != "# " ||
        trim(first.substr(2)).substr(0, kMagic.size()) != kMagic) {
        throw ParseError(1, "not a urania table (missing '# urania-table v1' header)");
    }
    const auto version = to_int(trim(first.substr(2)).substr(kMagic.size()));
    if (!version) throw ParseError(1, "unreadable format version");
    if (*version != kTableFormatVersion) {
        throw VersionError("unsupported table format version " + std::to_string(*version) + " (this build reads v" +
                           std::to_string(kTableFormatVersion) + ")");
    }

    Header header;
    std::vector<DataRow> data;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto text = trim(lines[i]);
        if (text.empty()) continue;
        if (text.front() == '#') {
            if (!data.empty()) throw ParseError(i + 1, "header line after table rows");
            record_header(header, trim(text.substr(1)), i + 1);
            continue;
        }
        data.push_back({split(text, ","), i + 1});
    }

    const auto& kind = require_pair(header, "kind");
    AnyTable table;
    if (kind == "single") {
        table = assemble_single(header, data);
    } else if (kind == "double") {
        table = assemble_double(header, data);
    } else {
        throw ParseError(header.pair_lines.at("kind"), "unknown table kind '" + kind + "'");
    }
    try {
        std::visit([](const auto& t) { check_table(t); }, table);
    } catch (const DomainError& e) {
        throw ParseError(0, std::string("invalid table contents: ") + e.what());
    }
    return table;
}

AnyTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open table '" + path.string() + "'");
    try {
        return read_table(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.filename().string() + ": " + e.detail());
    }
}

std::string table_file_name(const PlanetTable& t) { return t.elements.name + ".single.tbl"; }

std::string table_file_name(const DoubleEntryTable& t) {
    return t.planet.name + "-" + t.earth.name + ".double.tbl";
}

}  // namespace urania
