#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "urania/kepler.hpp"

namespace urania {

/// One row of a single-entry table, indexed by days since aphelion.
struct TableRow {
    double t = 0.0;              // days since aphelion
    AngleDeg nu_aph = 0.0;       // true anomaly from aphelion
    double r = 0.0;              // AU
    double motion_day = 0.0;     // degrees per day
    double motion_hour = 0.0;    // degrees per hour, motion_day / 24

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Single-entry table over one orbital period: row k sits at t = k * step.
struct PlanetTable {
    OrbitalElements elements;
    double step = 1.0;
    std::vector<TableRow> rows;

    double period() const { return elements.P; }
    const std::string& name() const { return elements.name; }

    friend bool operator==(const PlanetTable&, const PlanetTable&) = default;
};

/// Half-width of the central difference behind the motion columns.
inline constexpr double kMotionHalfWidthDays = 0.5;
inline constexpr int kMinGridSize = 8;

/// Abscissa of grid node `i` on an axis with `n` nodes per period `period`.
/// The compiler and the evaluator share this so that knots match bit for bit.
inline double grid_time(std::size_t i, double period, std::size_t n) {
    return static_cast<double>(i) * period / static_cast<double>(n);
}

/// Double-entry geocentric table: cell (iu, iv) holds the planet's geocentric
/// place with the planet grid_time(iu, P_planet, n_u) days past its aphelion
/// and the Earth grid_time(iv, P_earth, n_v) days past its own. Both axes are periodic.
/// Cells are stored row-major in iu, as three parallel arrays.
struct DoubleEntryTable {
    OrbitalElements planet;
    OrbitalElements earth;
    std::size_t n_u = 0;
    std::size_t n_v = 0;
    std::vector<double> lambda;
    std::vector<double> beta;
    std::vector<double> delta;

    std::size_t index(std::size_t iu, std::size_t iv) const { return iu * n_v + iv; }
    std::size_t cells() const { return n_u * n_v; }

    friend bool operator==(const DoubleEntryTable&, const DoubleEntryTable&) = default;
};

using AnyTable = std::variant<PlanetTable, DoubleEntryTable>;

/// Throws DomainError unless 0 < step <= P/8.
PlanetTable build_planet_table(const OrbitalElements& el, double step);

/// Throws DomainError when either grid size is below kMinGridSize.
DoubleEntryTable build_double_entry(const OrbitalElements& planet, const OrbitalElements& earth,
                                    std::size_t n_u, std::size_t n_v);

/// Structural checks: row spacing and coverage, monotone anomaly, positive
/// motion, exact hour column, positive distances. Throws DomainError.
void check_table(const PlanetTable& table);
void check_table(const DoubleEntryTable& table);

// Serialization -------------------------------------------------------------

inline constexpr int kTableFormatVersion = 1;

void write_table(const PlanetTable& table, std::ostream& out);
void write_table(const DoubleEntryTable& table, std::ostream& out);
void write_table(const AnyTable& table, const std::filesystem::path& path);

/// Throws ParseError (with line number) for malformed input and
/// VersionError for an unsupported format version.
AnyTable read_table(std::istream& in);
AnyTable read_table(const std::filesystem::path& path);

std::string table_file_name(const PlanetTable& t);
std::string table_file_name(const DoubleEntryTable& t);

// Census --------------------------------------------------------------------

struct CensusConfig {
    std::vector<OrbitalElements> single_entry;  // bodies that get a single-entry table
    std::vector<OrbitalElements> double_entry;  // planets paired with `earth`
    OrbitalElements earth;
    double step = 1.0;
    std::size_t n_u = 64;
    std::size_t n_v = 64;
};

struct CensusLine {
    std::string name;
    std::string kind;  // "single" or "double"
    std::uint64_t entries = 0;
    std::uint64_t solver_calls = 0;
    std::uint64_t arithmetic_ops = 0;  // adds + muls + transcendental calls
};

struct CensusReport {
    std::vector<CensusLine> lines;
    std::uint64_t single_rows = 0;
    std::uint64_t double_cells = 0;
    std::uint64_t solver_calls = 0;
    std::uint64_t arithmetic_ops = 0;

    std::uint64_t total_entries() const { return single_rows + double_cells; }
};

/// Counts what compiling the configured table set costs. Arithmetic is
/// tallied by running the compiler kernels on counted scalars.
CensusReport calculation_census(const CensusConfig& config);

}  // namespace urania
