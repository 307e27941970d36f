#include "urania/angles.hpp"

#include <cmath>
#include <string>

#include "detail/kernel_scalar.hpp"
#include "urania/errors.hpp"

namespace urania {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite angle");
}

bool is_leap(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

}  // namespace

AngleDeg normalize_deg(double x) {
    require_finite(x, "normalize_deg");
    return detail::normalize_deg(x);
}

double wrap_diff_deg(AngleDeg a, AngleDeg b) {
    require_finite(a, "wrap_diff_deg");
    require_finite(b, "wrap_diff_deg");
    double d = std::fmod(a - b, 360.0);
    if (d > 180.0) d -= 360.0;
    if (d <= -180.0) d += 360.0;
    return detail::canonical_zero(d);
}

AngleDeg aphelion_shift(AngleDeg x) { return normalize_deg(x + 180.0); }

int days_in_month(int year, int month) {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) throw DomainError("month out of range: " + std::to_string(month));
    return month == 2 && is_leap(year) ? 29 : kDays[month - 1];
}

// Meeus, Astronomical Algorithms ch. 7, Gregorian branch only.
JulianDate calendar_to_jd(int year, int month, int day, double day_fraction) {
    if (month < 1 || month > 12) throw DomainError("invalid month " + std::to_string(month));
    if (day < 1 || day > days_in_month(year, month)) {
        throw DomainError("invalid day " + std::to_string(day) + " for " + std::to_string(year) +
                          "-" + std::to_string(month));
    }
    if (!(day_fraction >= 0.0 && day_fraction < 1.0)) {
        throw DomainError("day fraction must lie in [0, 1)");
    }
    int y = year;
    int m = month;
    if (m <= 2) {
        y -= 1;
        m += 12;
    }
    const double a = std::floor(y / 100.0);
    const double b = 2.0 - a + std::floor(a / 4.0);
    const double day_number = std::floor(365.25 * (y + 4716)) + std::floor(30.6001 * (m + 1)) +
                              day + b - 1524.5;
    return {day_number + day_fraction};
}

CalendarDate jd_to_calendar(JulianDate jd) {
    if (!std::isfinite(jd.jd)) throw DomainError("jd_to_calendar: non-finite Julian date");
    const double shifted = jd.jd + 0.5;
    const double z = std::floor(shifted);
    const double f = shifted - z;
    const double alpha = std::floor((z - 1867216.25) / 36524.25);
    const double a = z + 1.0 + alpha - std::floor(alpha / 4.0);
    const double b = a + 1524.0;
    const double c = std::floor((b - 122.1) / 365.25);
    const double d = std::floor(365.25 * c);
    const double e = std::floor((b - d) / 30.6001);

    CalendarDate out;
    out.day = static_cast<int>(b - d - std::floor(30.6001 * e));
    out.month = static_cast<int>(e < 14.0 ? e - 1.0 : e - 13.0);
    out.year = static_cast<int>(out.month > 2 ? c - 4716.0 : c - 4715.0);
    out.day_fraction = f;
    return out;
}

}  // namespace urania
