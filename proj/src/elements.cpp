#include "urania/elements.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <system_error>

#include "urania/errors.hpp"

namespace urania {

namespace {

constexpr std::string_view kRequired[] = {"name",      "a_au",      "e",      "i_deg",
                                          "Omega_deg", "omega_deg", "P_days", "T_aph_jd"};

std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

std::optional<double> to_double(const std::string& s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

struct Columns {
    std::size_t required[8];
    std::vector<std::size_t> correction;  // amp, per, ph triples
};

Columns map_header(const std::vector<std::string>& header, std::size_t line) {
    Columns cols{};
    std::set<std::string> seen;
    for (const auto& h : header) {
        if (!seen.insert(h).second) throw ParseError(line, "duplicate column '" + h + "'");
    }
    for (std::size_t r = 0; r < 8; ++r) {
        bool found = false;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == kRequired[r]) {
                cols.required[r] = c;
                found = true;
            }
        }
        if (!found) throw ParseError(line, "missing column '" + std::string(kRequired[r]) + "'");
    }
    for (std::size_t j = 1;; ++j) {
        const auto n = std::to_string(j);
        std::size_t idx[3];
        int present = 0;
        const std::string names[3] = {"amp_" + n, "per_" + n, "ph_" + n};
        for (int q = 0; q < 3; ++q) {
            for (std::size_t c = 0; c < header.size(); ++c) {
                if (header[c] == names[q]) {
                    idx[q] = c;
                    ++present;
                }
            }
        }
        if (present == 0) break;
        if (present != 3) throw ParseError(line, "correction " + n + " needs amp_" + n + ", per_" + n + " and ph_" + n);
        cols.correction.insert(cols.correction.end(), idx, idx + 3);
    }
    const std::size_t known = 8 + cols.correction.size();
    if (known != header.size()) throw ParseError(line, "unrecognized column in header");
    return cols;
}

}  // namespace

ElementsDataset::ElementsDataset(std::vector<OrbitalElements> bodies) {
    for (auto& b : bodies) {
        b.validate();
        if (find(b.name) != nullptr) throw DomainError("duplicate body name '" + b.name + "'");
        bodies_.push_back(std::move(b));
    }
}

const OrbitalElements* ElementsDataset::find(std::string_view name) const {
    for (const auto& b : bodies_) {
        if (b.name == name) return &b;
    }
    return nullptr;
}

const OrbitalElements& ElementsDataset::at(std::string_view name) const {
    if (const auto* b = find(name)) return *b;
    std::string known;
    for (const auto& b : bodies_) known += (known.empty() ? "" : ", ") + b.name;
    throw NotFound("no body named '" + std::string(name) + "' (known: " + known + ")");
}

std::vector<OrbitalElements> ElementsDataset::planets() const {
    std::vector<OrbitalElements> out;
    for (const auto& b : bodies_) {
        if (b.name != "earth") out.push_back(b);
    }
    return out;
}

ElementsDataset parse_elements(std::istream& in) {
    std::optional<Columns> cols;
    std::vector<OrbitalElements> bodies;
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto fields = split_csv(text);
        if (!cols) {
            cols = map_header(fields, line_no);
            continue;
        }
        const std::size_t width = 8 + cols->correction.size();
        if (fields.size() != width) {
            throw ParseError(line_no, "expected " + std::to_string(width) + " fields, found " +
                                          std::to_string(fields.size()));
        }
        OrbitalElements el;
        el.name = fields[cols->required[0]];
        if (el.name.empty()) throw ParseError(line_no, "empty body name");
        double values[7];
        for (std::size_t r = 1; r < 8; ++r) {
            const auto v = to_double(fields[cols->required[r]]);
            if (!v) {
                throw ParseError(line_no, "column '" + std::string(kRequired[r]) + "' is not a number: '" +
                                              fields[cols->required[r]] + "'");
            }
            values[r - 1] = *v;
        }
        el.a = values[0];
        el.e = values[1];
        el.i = values[2];
        el.Omega = values[3];
        el.omega = values[4];
        el.P = values[5];
        el.T_aph.jd = values[6];
        for (std::size_t c = 0; c < cols->correction.size(); c += 3) {
            const auto& a = fields[cols->correction[c]];
            const auto& p = fields[cols->correction[c + 1]];
            const auto& h = fields[cols->correction[c + 2]];
            if (a.empty() && p.empty() && h.empty()) continue;
            const auto av = to_double(a), pv = to_double(p), hv = to_double(h);
            if (!av || !pv || !hv) {
                throw ParseError(line_no, "correction " + std::to_string(c / 3 + 1) + " must give amp, per and ph");
            }
            el.corrections.push_back({*av, *pv, *hv});
        }
        try {
            el.validate();
        } catch (const DomainError& e) {
            throw DomainError("line " + std::to_string(line_no) + ": " + e.what());
        }
        for (const auto& b : bodies) {
            if (b.name == el.name) {
                throw DomainError("line " + std::to_string(line_no) + ": duplicate body name '" + el.name + "'");
            }
        }
        bodies.push_back(std::move(el));
    }
    if (!cols) throw ParseError(line_no, "no header row found");
    return ElementsDataset(std::move(bodies));
}

ElementsDataset load_elements(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open elements file '" + path.string() + "'");
    return parse_elements(in);
}

}  // namespace urania
