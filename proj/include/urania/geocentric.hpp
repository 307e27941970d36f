#pragma once

#include "urania/angles.hpp"
#include "urania/kepler.hpp"

namespace urania {

struct RectVec {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend RectVec operator-(const RectVec& a, const RectVec& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
};

struct GeocentricPosition {
    AngleDeg lambda = 0.0;
    double beta = 0.0;   // degrees
    double Delta = 0.0;  // AU
};

/// Separations below this raise DegenerateGeometry.
inline constexpr double kMinSeparationAu = 1e-12;

RectVec helio_to_rect(const HeliocentricState& s);

/// Longitude, latitude and length of `v`. At the poles the longitude is 0.
/// Throws DegenerateGeometry when |v| < kMinSeparationAu.
GeocentricPosition rect_to_spherical(const RectVec& v);

GeocentricPosition geocentric_reduce(const HeliocentricState& planet,
                                     const HeliocentricState& earth);

GeocentricPosition geocentric_at(const OrbitalElements& planet, const OrbitalElements& earth,
                                 JulianDate jd);

/// Geocentric place with each body placed independently by days since its
/// own aphelion passage. This is what a double-entry table cell holds.
GeocentricPosition geocentric_from_phases(const OrbitalElements& planet, double planet_days,
                                          const OrbitalElements& earth, double earth_days);

}  // namespace urania
