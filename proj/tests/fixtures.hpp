#pragma once

#include <string>

#include "urania/kepler.hpp"

namespace fixtures {

inline urania::OrbitalElements make(std::string name, double a, double e, double i, double node, double peri,
                                    double P, double t_aph) {
    urania::OrbitalElements el;
    el.name = std::move(name);
    el.a = a;
    el.e = e;
    el.i = i;
    el.Omega = node;
    el.omega = peri;
    el.P = P;
    el.T_aph = {t_aph};
    return el;
}

// Same numbers as data/elements.csv.
inline urania::OrbitalElements earth_like() {
    return make("earth", 1.00000261, 0.01671123, 0.0, 0.0, 102.93768193, 365.256363, 2451364.881039);
}
inline urania::OrbitalElements mars_like() {
    return make("mars", 1.52371034, 0.0933941, 1.84969142, 49.55953891, 286.49683150, 686.98, 2451164.508117);
}
inline urania::OrbitalElements jupiter_like() {
    return make("jupiter", 5.202887, 0.04838624, 1.30439695, 100.47390909, 274.25457074, 4332.589, 2449142.002194);
}

inline urania::OrbitalElements circular(std::string name, double a, double P, double t_aph = 2451545.0) {
    return make(std::move(name), a, 0.0, 0.0, 0.0, 0.0, P, t_aph);
}

}  // namespace fixtures
