#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "urania/elements.hpp"
#include "urania/evaluator.hpp"
#include "urania/tables.hpp"

namespace urania::cli {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,  // validation or threshold failure
    kExitUsage = 2,
    kExitIo = 3,       // I/O, parse or missing-table error
};

/// Entry point shared by the `urania` binary and the tests. `args` excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory holding compiled tables: URANIA_DATA_DIR if set, else "urania-tables".
std::filesystem::path default_table_dir();
std::filesystem::path default_elements_path();

/// Parses "64x64" into grid sizes. Throws DomainError.
std::pair<std::size_t, std::size_t> parse_grid(const std::string& text);

/// "YYYY-MM-DD", optionally followed by "THH:MM" and ":SS[.fff]".
JulianDate parse_date(const std::string& text);

/// Mercury-Saturn fidelity configuration: 1-day single-entry tables for
/// every body and 64x64 double-entry tables for every planet/Earth pair.
CensusConfig default_census_config(const ElementsDataset& data);

struct ErrorStats {
    double max = 0.0;
    double mean = 0.0;
};

struct CompareReport {
    std::string planet;
    std::string kind;       // "double": geocentric lambda/beta/delta; "single": nu_aph and r
    double start_jd = 0.0;
    double end_jd = 0.0;
    std::size_t samples = 0;
    ErrorStats lambda;      // degrees (nu_aph for single-entry comparisons)
    ErrorStats beta;        // degrees (zero for single-entry comparisons)
    ErrorStats delta;       // AU (radius for single-entry comparisons)
    std::string config;
};

/// Samples `samples` dates start, start + span/samples, ... and compares
/// table mode against direct mode.
CompareReport compare_double(const DoubleEntryTable& table, double start_jd, double span_days,
                             std::size_t samples);
CompareReport compare_single(const PlanetTable& table, double start_jd, double span_days, std::size_t samples);

/// Synodic period of a planet relative to the Earth, in days.
double synodic_period(const OrbitalElements& planet, const OrbitalElements& earth);

struct BenchReport {
    std::string planet;
    std::size_t queries = 0;
    OpCounter direct;
    OpCounter table;
    double direct_seconds = 0.0;
    double table_seconds = 0.0;
    double batch_seconds = 0.0;
    std::string batch_isa;
};

BenchReport run_bench(const OrbitalElements& planet, const OrbitalElements& earth, const DoubleEntryTable& table,
                      std::size_t queries, double start_jd, double span_days);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidateOptions {
    std::vector<std::filesystem::path> table_files;
};

/// End-to-end invariant checks over a dataset (see `urania validate`).
std::vector<CheckResult> run_validate(const ElementsDataset& data, const ValidateOptions& options);

}  // namespace urania::cli
