#include "urania/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detail/geometry_impl.hpp"
#include "detail/lookup_impl.hpp"
#include "urania/errors.hpp"

namespace urania {

namespace {

void require_phase(double x, double period, const char* what) {
    if (!(x >= 0.0 && x < period)) {
        throw DomainError(std::string(what) + " = " + std::to_string(x) + " d is outside [0, " +
                          std::to_string(period) + "); reduce modulo the period first");
    }
}

void require_finite_jd(JulianDate jd) {
    if (!std::isfinite(jd.jd)) throw DomainError("non-finite Julian date");
}

template <class Fn>
auto with_counter(OpCounter* ops, Fn&& fn) {
    if (ops == nullptr) return fn(double{});
    CountingScope scope(*ops);
    return fn(CountedReal{});
}

GeocentricPosition to_position(double lambda, double beta, double delta) {
    return {lambda, detail::canonical_zero(beta), delta};
}

std::string pair_key(std::string_view planet, std::string_view earth) {
    return std::string(planet) + "/" + std::string(earth);
}

}  // namespace

PlanetLookup lookup_planet(const PlanetTable& table, double t, OpCounter* ops) {
    if (table.rows.empty()) throw DomainError("lookup_planet: empty table");
    require_phase(t, table.period(), "lookup_planet: t");
    return with_counter(ops, [&](auto zero) {
        using Real = decltype(zero);
        const auto res = detail::lookup_planet<Real>(table, Real(t));
        return PlanetLookup{raw(res.nu_aph), raw(res.r)};
    });
}

GeocentricPosition lookup_double(const DoubleEntryTable& table, double u, double v, OpCounter* ops) {
    if (table.cells() == 0) throw DomainError("lookup_double: empty table");
    require_phase(u, table.planet.P, "lookup_double: u");
    require_phase(v, table.earth.P, "lookup_double: v");
    return with_counter(ops, [&](auto zero) {
        using Real = decltype(zero);
        const auto c = detail::lookup_double<Real>(table, Real(u), Real(v));
        return to_position(raw(c.lambda), raw(c.beta), raw(c.delta));
    });
}

GeocentricPosition geocentric_at_table(const DoubleEntryTable& table, JulianDate jd, OpCounter* ops) {
    require_finite_jd(jd);
    if (table.cells() == 0) throw DomainError("geocentric_at_table: empty table");
    return with_counter(ops, [&](auto zero) {
        using Real = decltype(zero);
        const auto c = detail::geocentric_table<Real>(table, Real(jd.jd));
        return to_position(raw(c.lambda), raw(c.beta), raw(c.delta));
    });
}

GeocentricPosition geocentric_at_table(const TableSet& tables, std::string_view planet, JulianDate jd,
                                       OpCounter* ops, std::string_view earth) {
    const auto* table = tables.pair(planet, earth);
    if (table == nullptr) {
        throw NotFound("no double-entry table loaded for " + std::string(planet) + "/" + std::string(earth));
    }
    return geocentric_at_table(*table, jd, ops);
}

PlanetLookup planet_at_table(const PlanetTable& table, JulianDate jd, OpCounter* ops) {
    require_finite_jd(jd);
    if (table.rows.empty()) throw DomainError("planet_at_table: empty table");
    return with_counter(ops, [&](auto zero) {
        using Real = decltype(zero);
        const Real t = detail::reduce_phase(Real(jd.jd), table.elements.T_aph.jd, table.period());
        const auto res = detail::lookup_planet<Real>(table, t);
        return PlanetLookup{raw(res.nu_aph), raw(res.r)};
    });
}

void TableSet::add(PlanetTable table) {
    auto key = table.elements.name;
    singles_.insert_or_assign(std::move(key), std::move(table));
}

void TableSet::add(DoubleEntryTable table) {
    auto key = pair_key(table.planet.name, table.earth.name);
    doubles_.insert_or_assign(std::move(key), std::move(table));
}

void TableSet::add(AnyTable table) {
    std::visit([this](auto&& t) { add(std::move(t)); }, std::move(table));
}

const PlanetTable* TableSet::single(std::string_view planet) const {
    const auto it = singles_.find(planet);
    return it == singles_.end() ? nullptr : &it->second;
}

const DoubleEntryTable* TableSet::pair(std::string_view planet, std::string_view earth) const {
    const auto it = doubles_.find(pair_key(planet, earth));
    return it == doubles_.end() ? nullptr : &it->second;
}

TableSet TableSet::load_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw IoError("table directory '" + dir.string() + "' does not exist");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".tbl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    TableSet set;
    for (const auto& f : files) set.add(read_table(f));
    return set;
}

CountedQuery counted_query_direct(const OrbitalElements& planet, const OrbitalElements& earth, JulianDate jd) {
    require_finite_jd(jd);
    CountedQuery out;
    CountingScope scope(out.ops);
    const CountedReal t(jd.jd);
    const auto s = detail::geocentric_from_phases(planet, t - CountedReal(planet.T_aph.jd), earth,
                                                  t - CountedReal(earth.T_aph.jd));
    out.position = to_position(raw(s.lambda), raw(s.beta), raw(s.delta));
    return out;
}

CountedQuery counted_query_table(const DoubleEntryTable& table, JulianDate jd) {
    CountedQuery out;
    out.position = geocentric_at_table(table, jd, &out.ops);
    return out;
}

CountedQuery counted_query(QueryMode mode, const OrbitalElements& planet, const OrbitalElements& earth,
                           const TableSet& tables, JulianDate jd) {
    if (mode == QueryMode::direct) return counted_query_direct(planet, earth, jd);
    const auto* table = tables.pair(planet.name, earth.name);
    if (table == nullptr) throw NotFound("no double-entry table loaded for " + planet.name + "/" + earth.name);
    return counted_query_table(*table, jd);
}

std::ostream& operator<<(std::ostream& os, const OpCounter& c) {
    return os << "adds=" << c.adds << " muls=" << c.muls << " transcendental=" << c.transcendental_calls
              << " row_accesses=" << c.row_accesses << " total=" << c.total();
}

}  // namespace urania
