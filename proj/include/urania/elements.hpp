#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "urania/kepler.hpp"

namespace urania {

/// Orbital elements keyed by unique body name.
class ElementsDataset {
public:
    ElementsDataset() = default;
    explicit ElementsDataset(std::vector<OrbitalElements> bodies);

    const std::vector<OrbitalElements>& bodies() const { return bodies_; }
    std::size_t size() const { return bodies_.size(); }

    const OrbitalElements* find(std::string_view name) const;
    /// Throws NotFound listing the known names.
    const OrbitalElements& at(std::string_view name) const;
    const OrbitalElements& earth() const { return at("earth"); }
    bool has_earth() const { return find("earth") != nullptr; }

    /// Every body except the Earth, in file order.
    std::vector<OrbitalElements> planets() const;

private:
    std::vector<OrbitalElements> bodies_;
};

/// CSV with header `name,a_au,e,i_deg,Omega_deg,omega_deg,P_days,T_aph_jd`,
/// optionally followed by correction triples `amp_1,per_1,ph_1,amp_2,...`.
/// Lines starting with '#' are comments. Throws ParseError for malformed
/// rows and DomainError (with line number, body and field) for values
/// that violate the element invariants or repeat a name.
ElementsDataset parse_elements(std::istream& in);
ElementsDataset load_elements(const std::filesystem::path& path);

}  // namespace urania
