#include "urania/geocentric.hpp"

#include "detail/geometry_impl.hpp"

namespace urania {

namespace {

GeocentricPosition to_public(const detail::Spherical<double>& s) {
    return {s.lambda, detail::canonical_zero(s.beta), s.delta};
}

}  // namespace

RectVec helio_to_rect(const HeliocentricState& s) {
    const auto v = detail::helio_to_rect(s.l, s.b, s.r);
    return {v.x, v.y, v.z};
}

GeocentricPosition rect_to_spherical(const RectVec& v) {
    return to_public(detail::rect_to_spherical(detail::Vec3<double>{v.x, v.y, v.z}));
}

GeocentricPosition geocentric_reduce(const HeliocentricState& planet, const HeliocentricState& earth) {
    return rect_to_spherical(helio_to_rect(planet) - helio_to_rect(earth));
}

GeocentricPosition geocentric_at(const OrbitalElements& planet, const OrbitalElements& earth,
                                 JulianDate jd) {
    return geocentric_reduce(heliocentric_state(planet, jd), heliocentric_state(earth, jd));
}

GeocentricPosition geocentric_from_phases(const OrbitalElements& planet, double planet_days,
                                          const OrbitalElements& earth, double earth_days) {
    return geocentric_reduce(heliocentric_since_aphelion(planet, planet_days),
                             heliocentric_since_aphelion(earth, earth_days));
}

}  // namespace urania
