#pragma once

#include <string>
#include <vector>

#include "urania/angles.hpp"

namespace urania {

/// Periodic term added to the mean anomaly:
/// amplitude * sin(360 * dt / period + phase), dt in days since aphelion.
struct CorrectionTerm {
    double amplitude = 0.0;  // degrees
    double period = 1.0;     // days
    AngleDeg phase = 0.0;

    friend bool operator==(const CorrectionTerm&, const CorrectionTerm&) = default;
};

struct OrbitalElements {
    std::string name;
    double a = 1.0;           // AU
    double e = 0.0;
    AngleDeg i = 0.0;         // inclination to the ecliptic
    AngleDeg Omega = 0.0;     // longitude of ascending node
    AngleDeg omega = 0.0;     // argument of perihelion
    double P = 365.25;        // days
    JulianDate T_aph{};       // an aphelion passage
    std::vector<CorrectionTerm> corrections;

    /// Throws DomainError naming the offending field and body.
    void validate() const;

    double mean_motion() const { return 360.0 / P; }  // degrees/day

    friend bool operator==(const OrbitalElements&, const OrbitalElements&) = default;
};

struct HeliocentricState {
    AngleDeg l = 0.0;  // ecliptic longitude
    double b = 0.0;    // ecliptic latitude, degrees
    double r = 0.0;    // AU
};

/// Position of a body along its orbit, measured from aphelion.
struct OrbitPoint {
    AngleDeg nu_aph = 0.0;
    double r = 0.0;
};

/// Mean anomaly measured from aphelion, corrections included.
AngleDeg mean_anomaly_aph(const OrbitalElements& el, JulianDate jd);
AngleDeg mean_anomaly_since_aphelion(const OrbitalElements& el, double days_since_aph);

/// Eccentric anomaly (radians, perihelion-referenced) for mean anomaly `M`
/// reduced to [0, 2*pi). Newton iteration with a bisection fallback;
/// residual below 1e-12 rad for every 0 <= e < 1.
double solve_kepler(double M, double e);

/// Same as solve_kepler; reports whether the bisection fallback ran.
double solve_kepler(double M, double e, bool& used_fallback);

/// True anomaly in radians, continuous with E on the same revolution.
double true_anomaly(double E, double e);

double radius(double E, double e, double a);

/// Position in the orbit `days_since_aph` days after the T_aph passage.
OrbitPoint orbit_point_since_aphelion(const OrbitalElements& el, double days_since_aph);

HeliocentricState heliocentric_state(const OrbitalElements& el, JulianDate jd);
HeliocentricState heliocentric_since_aphelion(const OrbitalElements& el, double days_since_aph);

/// Inverse of the forward chain: days after aphelion at which the body
/// reaches true anomaly `nu_aph`. Result in [0, P). Throws
/// UnsupportedInversion if the elements carry corrections.
double time_since_aphelion(const OrbitalElements& el, AngleDeg nu_aph);

}  // namespace urania
