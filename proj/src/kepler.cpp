#include "urania/kepler.hpp"

#include <cmath>
#include <string>

#include "detail/kepler_impl.hpp"
#include "urania/errors.hpp"

namespace urania {

namespace {

[[noreturn]] void invalid(const OrbitalElements& el, const std::string& field, const std::string& why) {
    const std::string body = el.name.empty() ? std::string("<unnamed>") : el.name;
    throw DomainError("elements for '" + body + "': " + field + " " + why);
}

}  // namespace

void OrbitalElements::validate() const {
    auto finite = [&](double v, const char* field) {
        if (!std::isfinite(v)) invalid(*this, field, "is not finite");
    };
    finite(a, "semi-major axis a");
    finite(e, "eccentricity e");
    finite(i, "inclination i");
    finite(Omega, "node Omega");
    finite(omega, "argument of perihelion omega");
    finite(P, "period P");
    finite(T_aph.jd, "aphelion epoch T_aph");
    if (!(a > 0.0)) invalid(*this, "semi-major axis a", "must be positive");
    if (!(e >= 0.0 && e < 1.0)) invalid(*this, "eccentricity e", "must satisfy 0 <= e < 1");
    if (!(P > 0.0)) invalid(*this, "period P", "must be positive");
    if (!(i >= 0.0 && i < 180.0)) invalid(*this, "inclination i", "must lie in [0, 180)");
    if (!(Omega >= 0.0 && Omega < 360.0)) invalid(*this, "node Omega", "must lie in [0, 360)");
    if (!(omega >= 0.0 && omega < 360.0)) {
        invalid(*this, "argument of perihelion omega", "must lie in [0, 360)");
    }
    for (std::size_t k = 0; k < corrections.size(); ++k) {
        const auto& c = corrections[k];
        const std::string field = "correction " + std::to_string(k + 1);
        if (!std::isfinite(c.amplitude) || !std::isfinite(c.period) || !std::isfinite(c.phase)) {
            invalid(*this, field, "has non-finite parameters");
        }
        if (!(c.period > 0.0)) invalid(*this, field, "period must be positive");
        if (!(c.amplitude >= 0.0)) invalid(*this, field, "amplitude must be non-negative");
    }
}

AngleDeg mean_anomaly_aph(const OrbitalElements& el, JulianDate jd) {
    return detail::mean_anomaly_since_aph(el, jd - el.T_aph);
}

AngleDeg mean_anomaly_since_aphelion(const OrbitalElements& el, double days_since_aph) {
    return detail::mean_anomaly_since_aph(el, days_since_aph);
}

double solve_kepler(double M, double e) { return detail::solve_kepler(M, e, nullptr); }

double solve_kepler(double M, double e, bool& used_fallback) {
    return detail::solve_kepler(M, e, &used_fallback);
}

double true_anomaly(double E, double e) {
    if (!(e >= 0.0 && e < 1.0)) throw DomainError("true_anomaly: eccentricity must satisfy 0 <= e < 1");
    return detail::true_anomaly(E, e);
}

double radius(double E, double e, double a) { return detail::radius(E, e, a); }

OrbitPoint orbit_point_since_aphelion(const OrbitalElements& el, double days_since_aph) {
    const auto ch = detail::anomaly_chain(el, days_since_aph);
    return {aphelion_shift(ch.nu_peri_deg), ch.r};
}

HeliocentricState heliocentric_since_aphelion(const OrbitalElements& el, double days_since_aph) {
    const auto h = detail::heliocentric(el, days_since_aph);
    return {h.l, h.b, h.r};
}

HeliocentricState heliocentric_state(const OrbitalElements& el, JulianDate jd) {
    return heliocentric_since_aphelion(el, jd - el.T_aph);
}

double time_since_aphelion(const OrbitalElements& el, AngleDeg nu_aph) {
    if (!el.corrections.empty()) {
        throw UnsupportedInversion("time_since_aphelion: '" + el.name +
                                   "' has correction terms; the corrected mean anomaly is not invertible");
    }
    const double e = el.e;
    if (!(e >= 0.0 && e < 1.0)) throw DomainError("time_since_aphelion: eccentricity must satisfy 0 <= e < 1");
    const double nu = deg_to_rad(aphelion_shift(normalize_deg(nu_aph)));
    const double half = 0.5 * nu;
    const double E = detail::normalize_rad(
        2.0 * std::atan2(std::sqrt(1.0 - e) * std::sin(half), std::sqrt(1.0 + e) * std::cos(half)));
    const double m_peri = rad_to_deg(E - e * std::sin(E));
    const double m_aph = aphelion_shift(normalize_deg(m_peri));
    double t = m_aph / 360.0 * el.P;
    if (t >= el.P) t -= el.P;
    return t;
}

}  // namespace urania
