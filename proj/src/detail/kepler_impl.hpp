#pragma once

#include <cmath>
#include <numbers>

#include "detail/kernel_scalar.hpp"
#include "urania/errors.hpp"
#include "urania/kepler.hpp"

namespace urania::detail {

inline constexpr int kNewtonIterationCap = 50;
inline constexpr double kKeplerTolerance = 1e-12;

template <class Real>
Real mean_anomaly_since_aph(const OrbitalElements& el, Real dt) {
    using std::sin;
    Real m = Real(360.0) / Real(el.P) * dt;
    for (const auto& c : el.corrections) {
        const Real arg = Real(360.0) * dt / Real(c.period) + Real(c.phase);
        m = m + Real(c.amplitude) * sin(to_rad(arg));
    }
    return normalize_deg(m);
}

template <class Real>
Real kepler_residual(Real E, double e, Real M) {
    using std::sin;
    return E - Real(e) * sin(E) - M;
}

template <class Real>
Real solve_kepler(Real M, double e, bool* used_fallback) {
    using std::cos;
    using std::fabs;
    using std::sin;
    if (!(e >= 0.0 && e < 1.0)) {
        throw DomainError("solve_kepler: eccentricity must satisfy 0 <= e < 1");
    }
    if (used_fallback) *used_fallback = false;
    M = normalize_rad(M);

    Real E = e <= 0.8 ? M : Real(std::numbers::pi);
    for (int it = 0; it < kNewtonIterationCap; ++it) {
        const Real f = kepler_residual(E, e, M);
        if (fabs(f) < Real(1e-14)) break;
        const Real step = f / (Real(1.0) - Real(e) * cos(E));
        E = E - step;
        if (fabs(step) < Real(1e-15)) break;
    }

    const bool in_range = E >= Real(0.0) && E <= Real(kTwoPi);
    if (in_range && fabs(kepler_residual(E, e, M)) < Real(kKeplerTolerance)) return E;

    // The residual is monotone in E, negative at 0 and positive at 2*pi.
    if (used_fallback) *used_fallback = true;
    Real lo = 0.0;
    Real hi = kTwoPi;
    for (int it = 0; it < 200; ++it) {
        const Real mid = Real(0.5) * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (kepler_residual(mid, e, M) < Real(0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return Real(0.5) * (lo + hi);
}

template <class Real>
Real true_anomaly(Real E, double e) {
    using std::atan2;
    using std::cos;
    using std::sin;
    using std::sqrt;
    const Real half = Real(0.5) * E;
    return Real(2.0) * atan2(sqrt(Real(1.0 + e)) * sin(half), sqrt(Real(1.0 - e)) * cos(half));
}

template <class Real>
Real radius(Real E, double e, double a) {
    using std::cos;
    return Real(a) * (Real(1.0) - Real(e) * cos(E));
}

template <class Real>
struct AnomalyChain {
    Real nu_peri_deg;
    Real r;
};

template <class Real>
AnomalyChain<Real> anomaly_chain(const OrbitalElements& el, Real dt) {
    const Real m_aph = mean_anomaly_since_aph(el, dt);
    const Real m_peri = normalize_deg(m_aph + Real(180.0));
    const Real E = detail::solve_kepler(to_rad(m_peri), el.e, static_cast<bool*>(nullptr));
    const Real nu = detail::true_anomaly(E, el.e);
    return {to_deg(nu), detail::radius(E, el.e, el.a)};
}

template <class Real>
struct HelioT {
    Real l, b, r;
};

template <class Real>
HelioT<Real> heliocentric(const OrbitalElements& el, Real dt) {
    using std::asin;
    using std::atan2;
    using std::cos;
    using std::sin;
    const auto ch = anomaly_chain(el, dt);
    const Real u = to_rad(Real(el.omega) + ch.nu_peri_deg);
    const Real node = to_rad(Real(el.Omega));
    const Real inc = to_rad(Real(el.i));
    const Real cu = cos(u), su = sin(u);
    const Real cn = cos(node), sn = sin(node);
    const Real ci = cos(inc), si = sin(inc);
    const Real x = ch.r * (cn * cu - sn * su * ci);
    const Real y = ch.r * (sn * cu + cn * su * ci);
    const Real z = ch.r * su * si;
    Real s = z / ch.r;
    if (s > Real(1.0)) s = 1.0;
    if (s < Real(-1.0)) s = -1.0;
    const Real l = (x == Real(0.0) && y == Real(0.0)) ? Real(0.0) : normalize_deg(to_deg(atan2(y, x)));
    return {l, to_deg(asin(s)), ch.r};
}

}  // namespace urania::detail
