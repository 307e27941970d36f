#pragma once

#include <cmath>

#include "detail/kepler_impl.hpp"
#include "urania/errors.hpp"
#include "urania/geocentric.hpp"

namespace urania::detail {

template <class Real>
struct Vec3 {
    Real x, y, z;
};

template <class Real>
Vec3<Real> helio_to_rect(Real l_deg, Real b_deg, Real r) {
    using std::cos;
    using std::sin;
    const Real l = to_rad(l_deg);
    const Real b = to_rad(b_deg);
    const Real cb = cos(b);
    return {r * cb * cos(l), r * cb * sin(l), r * sin(b)};
}

template <class Real>
struct Spherical {
    Real lambda, beta, delta;
};

template <class Real>
Spherical<Real> rect_to_spherical(const Vec3<Real>& v) {
    using std::atan2;
    using std::sqrt;
    const Real rho2 = v.x * v.x + v.y * v.y;
    const Real delta = sqrt(rho2 + v.z * v.z);
    if (!(delta >= Real(kMinSeparationAu))) {
        throw DegenerateGeometry("geocentric reduction: bodies coincide (separation below 1e-12 AU)");
    }
    const Real rho = sqrt(rho2);
    Real lambda = 0.0;
    if (rho2 > Real(0.0)) lambda = normalize_deg(to_deg(atan2(v.y, v.x)));
    const Real beta = to_deg(atan2(v.z, rho));
    return {lambda, beta, delta};
}

template <class Real>
Spherical<Real> geocentric_reduce(const HelioT<Real>& planet, const HelioT<Real>& earth) {
    const auto p = detail::helio_to_rect(planet.l, planet.b, planet.r);
    const auto e = detail::helio_to_rect(earth.l, earth.b, earth.r);
    return detail::rect_to_spherical(Vec3<Real>{p.x - e.x, p.y - e.y, p.z - e.z});
}

template <class Real>
Spherical<Real> geocentric_from_phases(const OrbitalElements& planet, Real planet_days,
                                       const OrbitalElements& earth, Real earth_days) {
    return detail::geocentric_reduce(detail::heliocentric(planet, planet_days), heliocentric(earth, earth_days));
}

}  // namespace urania::detail
