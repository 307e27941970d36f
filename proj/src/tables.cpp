#include "urania/tables.hpp"

#include <cmath>
#include <string>

#include "detail/compile_impl.hpp"
#include "detail/parallel.hpp"
#include "urania/errors.hpp"

namespace urania {

PlanetTable build_planet_table(const OrbitalElements& el, double step) {
    el.validate();
    if (!(std::isfinite(step) && step > 0.0 && step <= el.P / 8.0)) {
        throw DomainError("build_planet_table: step must satisfy 0 < step <= P/8 (P = " +
                          std::to_string(el.P) + " d, step = " + std::to_string(step) + " d)");
    }
    PlanetTable table;
    table.elements = el;
    table.step = step;
    table.rows.resize(detail::single_row_count(el.P, step));
    detail::parallel_for(table.rows.size(), [&](std::size_t k) {
        table.rows[k] = detail::compile_row<double>(el, static_cast<double>(k) * step);
    });
    return table;
}

DoubleEntryTable build_double_entry(const OrbitalElements& planet, const OrbitalElements& earth,
                                    std::size_t n_u, std::size_t n_v) {
    planet.validate();
    earth.validate();
    if (n_u < kMinGridSize || n_v < kMinGridSize) {
        throw DomainError("build_double_entry: grid must be at least 8x8, got " +
                          std::to_string(n_u) + "x" + std::to_string(n_v));
    }
    DoubleEntryTable table;
    table.planet = planet;
    table.earth = earth;
    table.n_u = n_u;
    table.n_v = n_v;
    table.lambda.resize(n_u * n_v);
    table.beta.resize(n_u * n_v);
    table.delta.resize(n_u * n_v);
    detail::parallel_for(n_u * n_v, [&](std::size_t k) {
        const auto cell = detail::compile_cell<double>(table, k / n_v, k % n_v);
        table.lambda[k] = detail::canonical_zero(cell.lambda);
        table.beta[k] = detail::canonical_zero(cell.beta);
        table.delta[k] = cell.delta;
    });
    return table;
}

void check_table(const PlanetTable& table) {
    const auto& el = table.elements;
    el.validate();
    auto fail = [&](std::size_t k, const std::string& why) {
        throw DomainError("table '" + el.name + "' row " + std::to_string(k) + ": " + why);
    };
    if (!(table.step > 0.0 && table.step <= el.P / 8.0)) {
        throw DomainError("table '" + el.name + "': step out of range");
    }
    const std::size_t expected = detail::single_row_count(el.P, table.step);
    if (table.rows.size() != expected) {
        throw DomainError("table '" + el.name + "': expected " + std::to_string(expected) +
                          " rows, found " + std::to_string(table.rows.size()));
    }
    const double r_lo = el.a * (1.0 - el.e) * (1.0 - 1e-12);
    const double r_hi = el.a * (1.0 + el.e) * (1.0 + 1e-12);
    int wraps = 0;
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const auto& row = table.rows[k];
        if (row.t != static_cast<double>(k) * table.step) fail(k, "abscissa off the step grid");
        if (!(row.nu_aph >= 0.0 && row.nu_aph < 360.0)) fail(k, "nu_aph not normalized");
        if (k > 0) {
            // Corrections can put row 0 just below 360, so allow one wrap.
            double advance = row.nu_aph - table.rows[k - 1].nu_aph;
            if (advance <= 0.0) {
                advance += 360.0;
                ++wraps;
            }
            if (!(advance > 0.0 && advance < 180.0) || wraps > 1) fail(k, "nu_aph not increasing");
        }
        if (!(row.r >= r_lo && row.r <= r_hi)) fail(k, "radius outside [a(1-e), a(1+e)]");
        if (!(row.motion_day > 0.0 && std::isfinite(row.motion_day))) fail(k, "motion per day not positive");
        if (row.motion_hour != row.motion_day / 24.0) fail(k, "motion per hour is not motion per day / 24");
    }
}

void check_table(const DoubleEntryTable& table) {
    table.planet.validate();
    table.earth.validate();
    const std::string id = table.planet.name + "/" + table.earth.name;
    if (table.n_u < kMinGridSize || table.n_v < kMinGridSize) {
        throw DomainError("table '" + id + "': grid smaller than 8x8");
    }
    const std::size_t n = table.cells();
    if (table.lambda.size() != n || table.beta.size() != n || table.delta.size() != n) {
        throw DomainError("table '" + id + "': cell arrays do not match n_u x n_v");
    }
    for (std::size_t k = 0; k < n; ++k) {
        const std::string where = "table '" + id + "' cell (" + std::to_string(k / table.n_v) + ", " +
                                  std::to_string(k % table.n_v) + "): ";
        if (!(table.lambda[k] >= 0.0 && table.lambda[k] < 360.0)) throw DomainError(where + "lambda not normalized");
        if (!(table.beta[k] >= -90.0 && table.beta[k] <= 90.0)) throw DomainError(where + "beta out of range");
        if (!(table.delta[k] > 0.0 && std::isfinite(table.delta[k]))) throw DomainError(where + "delta not positive");
    }
}

CensusReport calculation_census(const CensusConfig& config) {
    CensusReport report;
    for (const auto& el : config.single_entry) {
        el.validate();
        CensusLine line{el.name, "single", detail::single_row_count(el.P, config.step), 0, 0};
        OpCounter ops;
        {
            CountingScope scope(ops);
            for (std::size_t k = 0; k < line.entries; ++k) {
                (void)detail::compile_row<CountedReal>(el, static_cast<double>(k) * config.step);
            }
        }
        line.solver_calls = line.entries * detail::kSolvesPerRow;
        line.arithmetic_ops = ops.arithmetic();
        report.single_rows += line.entries;
        report.solver_calls += line.solver_calls;
        report.arithmetic_ops += line.arithmetic_ops;
        report.lines.push_back(std::move(line));
    }
    for (const auto& el : config.double_entry) {
        el.validate();
        DoubleEntryTable shape;
        shape.planet = el;
        shape.earth = config.earth;
        shape.n_u = config.n_u;
        shape.n_v = config.n_v;
        CensusLine line{el.name + "-" + config.earth.name, "double", shape.cells(), 0, 0};
        OpCounter ops;
        {
            CountingScope scope(ops);
            for (std::size_t k = 0; k < shape.cells(); ++k) {
                (void)detail::compile_cell<CountedReal>(shape, k / shape.n_v, k % shape.n_v);
            }
        }
        line.solver_calls = line.entries * detail::kSolvesPerCell;
        line.arithmetic_ops = ops.arithmetic();
        report.double_cells += line.entries;
        report.solver_calls += line.solver_calls;
        report.arithmetic_ops += line.arithmetic_ops;
        report.lines.push_back(std::move(line));
    }
    return report;
}

}  // namespace urania
