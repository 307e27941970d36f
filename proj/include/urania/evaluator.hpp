#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "urania/geocentric.hpp"
#include "urania/op_counter.hpp"
#include "urania/tables.hpp"

namespace urania {

struct PlanetLookup {
    AngleDeg nu_aph = 0.0;
    double r = 0.0;
};

/// Position `t` days after aphelion from a single-entry table: the anomaly is
/// advanced from the row below by whole days times the daily motion plus
/// leftover hours times the hourly motion; the radius is linear between
/// rows. Requires 0 <= t < P. When `ops` is given it receives the tally.
PlanetLookup lookup_planet(const PlanetTable& table, double t, OpCounter* ops = nullptr);

/// Bilinear read of a double-entry table at planet phase `u` and Earth phase
/// `v` (days since each body's aphelion), with longitude differences taken
/// across the 0/360 seam. Requires u in [0, P_planet), v in [0, P_earth).
GeocentricPosition lookup_double(const DoubleEntryTable& table, double u, double v,
                                 OpCounter* ops = nullptr);

/// Tables loaded for table-mode queries. Immutable once built; safe to share
/// across threads for reading.
class TableSet {
public:
    void add(PlanetTable table);
    void add(DoubleEntryTable table);
    void add(AnyTable table);

    const PlanetTable* single(std::string_view planet) const;
    const DoubleEntryTable* pair(std::string_view planet, std::string_view earth = "earth") const;

    /// Reads every `*.tbl` file in `dir`, in file-name order.
    static TableSet load_directory(const std::filesystem::path& dir);

    std::size_t size() const { return singles_.size() + doubles_.size(); }
    const std::map<std::string, PlanetTable, std::less<>>& singles() const { return singles_; }
    const std::map<std::string, DoubleEntryTable, std::less<>>& doubles() const { return doubles_; }

private:
    std::map<std::string, PlanetTable, std::less<>> singles_;
    std::map<std::string, DoubleEntryTable, std::less<>> doubles_;  // key "planet/earth"
};

/// Table-mode geocentric place: phases reduced modulo each period, then a
/// double-entry read. No transcendental function is evaluated.
GeocentricPosition geocentric_at_table(const DoubleEntryTable& table, JulianDate jd,
                                       OpCounter* ops = nullptr);

/// Throws NotFound naming the planet pair if no table is loaded.
GeocentricPosition geocentric_at_table(const TableSet& tables, std::string_view planet, JulianDate jd,
                                       OpCounter* ops = nullptr, std::string_view earth = "earth");

/// Single-entry position at `jd` (phase reduced modulo P).
PlanetLookup planet_at_table(const PlanetTable& table, JulianDate jd, OpCounter* ops = nullptr);

enum class QueryMode { direct, table };

struct CountedQuery {
    GeocentricPosition position;
    OpCounter ops;
};

/// Runs one geocentric query with full instrumentation. Direct mode solves
/// Kepler's equation for both bodies; table mode reads the pair's
/// double-entry table from `tables`. Compilation cost is never included.
CountedQuery counted_query(QueryMode mode, const OrbitalElements& planet, const OrbitalElements& earth,
                           const TableSet& tables, JulianDate jd);

CountedQuery counted_query_direct(const OrbitalElements& planet, const OrbitalElements& earth, JulianDate jd);
CountedQuery counted_query_table(const DoubleEntryTable& table, JulianDate jd);

}  // namespace urania
