#pragma once

#include <cstddef>

#include "detail/geometry_impl.hpp"
#include "urania/tables.hpp"

namespace urania::detail {

/// Kepler solves behind one single-entry row: the row itself plus the two
/// central-difference neighbours.
inline constexpr int kSolvesPerRow = 3;
inline constexpr int kSolvesPerCell = 2;

inline std::size_t single_row_count(double period, double step) {
    auto n = static_cast<std::size_t>(period / step);
    while (n > 0 && static_cast<double>(n - 1) * step >= period) --n;
    while (static_cast<double>(n) * step < period) ++n;
    return n;
}

template <class Real>
Real nu_aph_at(const OrbitalElements& el, Real t) {
    return normalize_deg(anomaly_chain(el, t).nu_peri_deg + Real(180.0));
}

template <class Real>
TableRow compile_row(const OrbitalElements& el, double t) {
    const auto ch = anomaly_chain(el, Real(t));
    const Real nu = normalize_deg(ch.nu_peri_deg + Real(180.0));
    const Real h = kMotionHalfWidthDays;
    const Real ahead = nu_aph_at(el, Real(t) + h);
    const Real behind = nu_aph_at(el, Real(t) - h);
    const Real motion = fold_diff_deg(ahead - behind) / (Real(2.0) * h);
    const Real hourly = motion / Real(24.0);
    return {t, canonical_zero(raw(nu)), raw(ch.r), raw(motion), raw(hourly)};
}

template <class Real>
Spherical<Real> compile_cell(const DoubleEntryTable& shape, std::size_t iu, std::size_t iv) {
    const Real u = grid_time(iu, shape.planet.P, shape.n_u);
    const Real v = grid_time(iv, shape.earth.P, shape.n_v);
    return detail::geocentric_from_phases(shape.planet, u, shape.earth, v);
}

}  // namespace urania::detail
