#pragma once

#include <numbers>

namespace urania {

/// Degrees. Every public angle in the library is expressed in degrees;
/// radians appear only inside kernels.
using AngleDeg = double;

inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;
inline constexpr double kRadPerDeg = std::numbers::pi / 180.0;

constexpr double deg_to_rad(double deg) { return deg * kRadPerDeg; }
constexpr double rad_to_deg(double rad) { return rad * kDegPerRad; }

/// Reduce to [0, 360). Throws DomainError for non-finite input.
AngleDeg normalize_deg(double x);

/// Signed difference a - b folded into (-180, 180]; exactly -180 maps to +180.
double wrap_diff_deg(AngleDeg a, AngleDeg b);

/// Converts an aphelion-referenced anomaly into a perihelion-referenced one
/// and back (it is its own inverse).
AngleDeg aphelion_shift(AngleDeg x);

/// Continuous day count. Differences are elapsed days.
struct JulianDate {
    double jd = 0.0;

    friend constexpr double operator-(JulianDate a, JulianDate b) { return a.jd - b.jd; }
    friend constexpr JulianDate operator+(JulianDate a, double days) { return {a.jd + days}; }
    friend constexpr auto operator<=>(JulianDate, JulianDate) = default;
};

/// Proleptic Gregorian date with the time of day as a fraction in [0, 1).
struct CalendarDate {
    int year = 2000;
    int month = 1;
    int day = 1;
    double day_fraction = 0.0;

    friend bool operator==(const CalendarDate&, const CalendarDate&) = default;
};

JulianDate calendar_to_jd(int year, int month, int day, double day_fraction);
inline JulianDate calendar_to_jd(const CalendarDate& d) {
    return calendar_to_jd(d.year, d.month, d.day, d.day_fraction);
}

CalendarDate jd_to_calendar(JulianDate jd);

int days_in_month(int year, int month);

}  // namespace urania
