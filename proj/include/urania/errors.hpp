#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace urania {

/// Argument outside the domain of an operation (bad eccentricity, invalid
/// calendar date, time outside a table's period, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Planet and Earth coincide, or a zero vector was given where a direction is needed.
class DegenerateGeometry : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by time_since_aphelion for elements that carry correction terms.
class UnsupportedInversion : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed input file. `line()` is 1-based, or 0 when the problem is not
/// tied to one line (e.g. a missing header key or a short row count).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                      : what),
          line_(line),
          detail_(what) {}

    std::size_t line() const noexcept { return line_; }
    /// Message without the line prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

class VersionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace urania
