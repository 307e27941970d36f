#pragma once

// Table-mode query kernels. Only additions, multiplications, divisions,
// comparisons, floor and row reads appear here; the SIMD kernels replay the
// same operations in the same order, lane by lane.

#include <algorithm>
#include <cstddef>

#include "detail/kernel_scalar.hpp"
#include "urania/tables.hpp"

namespace urania::detail {

template <class Real>
struct PlanetLookupT {
    Real nu_aph, r;
};

template <class Real>
struct CellLookupT {
    Real lambda, beta, delta;
};

inline std::size_t clamp_index(double floored, std::size_t n) {
    if (!(floored > 0.0)) return 0;
    const auto i = static_cast<std::size_t>(floored);
    return std::min(i, n - 1);
}

template <class Real>
PlanetLookupT<Real> lookup_planet(const PlanetTable& table, Real t) {
    using std::floor;
    const auto& rows = table.rows;
    const std::size_t n = rows.size();
    std::size_t k = clamp_index(raw(floor(t / Real(table.step))), n);
    if (k > 0 && t < Real(rows[k].t)) --k;
    if (k + 1 < n && t >= Real(rows[k + 1].t)) ++k;

    const TableRow& row = rows[k];
    const bool has_next = k + 1 < n;
    const double t1 = has_next ? rows[k + 1].t : table.elements.P;
    const double r1 = has_next ? rows[k + 1].r : rows[0].r;
    tick_rows<Real>(2);

    const Real off = t - Real(row.t);
    const Real days = floor(off);
    const Real hours = (off - days) * Real(24.0);
    Real nu = Real(row.nu_aph) + days * Real(row.motion_day) + hours * Real(row.motion_hour);
    if (nu >= Real(360.0)) nu = nu - Real(360.0);

    const Real frac = off / (Real(t1) - Real(row.t));
    const Real r = Real(row.r) + frac * (Real(r1) - Real(row.r));
    return {nu, r};
}

template <class Real>
Real node_at(std::size_t i, double period, std::size_t n) {
    return Real(static_cast<double>(i)) * Real(period) / Real(static_cast<double>(n));
}

template <class Real>
struct AxisPos {
    std::size_t i;
    Real frac;
};

/// Cell index and fractional position of `x` on a periodic axis of `n`
/// nodes. At a node the fraction is exactly zero.
template <class Real>
AxisPos<Real> locate(Real x, double period, std::size_t n) {
    using std::floor;
    const Real scale = Real(static_cast<double>(n)) / Real(period);
    std::size_t i = clamp_index(raw(floor(x * scale)), n);
    Real node = node_at<Real>(i, period, n);
    if (i > 0 && x < node) {
        --i;
        node = node_at<Real>(i, period, n);
    }
    if (i + 1 < n) {
        const Real next = node_at<Real>(i + 1, period, n);
        if (x >= next) {
            ++i;
            node = next;
        }
    }
    return {i, (x - node) * scale};
}

template <class Real>
Real bilerp(Real c00, Real c10, Real c01, Real c11, Real fu, Real fv) {
    const Real left = c00 + fv * (c01 - c00);
    const Real right = c10 + fv * (c11 - c10);
    return left + fu * (right - left);
}

template <class Real>
CellLookupT<Real> lookup_double(const DoubleEntryTable& table, Real u, Real v) {
    const auto pu = locate(u, table.planet.P, table.n_u);
    const auto pv = locate(v, table.earth.P, table.n_v);
    const std::size_t iu1 = pu.i + 1 == table.n_u ? 0 : pu.i + 1;
    const std::size_t iv1 = pv.i + 1 == table.n_v ? 0 : pv.i + 1;
    const std::size_t k00 = table.index(pu.i, pv.i);
    const std::size_t k10 = table.index(iu1, pv.i);
    const std::size_t k01 = table.index(pu.i, iv1);
    const std::size_t k11 = table.index(iu1, iv1);
    tick_rows<Real>(4);

    const Real l00 = table.lambda[k00];
    const Real d10 = fold_diff_deg(Real(table.lambda[k10]) - l00);
    const Real d01 = fold_diff_deg(Real(table.lambda[k01]) - l00);
    const Real d11 = fold_diff_deg(Real(table.lambda[k11]) - l00);
    const Real left = pv.frac * d01;
    const Real right = d10 + pv.frac * (d11 - d10);
    Real lambda = l00 + (left + pu.frac * (right - left));
    if (lambda < Real(0.0)) lambda = lambda + Real(360.0);
    if (lambda >= Real(360.0)) lambda = lambda - Real(360.0);

    const Real beta = bilerp(Real(table.beta[k00]), Real(table.beta[k10]), Real(table.beta[k01]),
                             Real(table.beta[k11]), pu.frac, pv.frac);
    const Real delta = bilerp(Real(table.delta[k00]), Real(table.delta[k10]), Real(table.delta[k01]),
                              Real(table.delta[k11]), pu.frac, pv.frac);
    return {lambda, beta, delta};
}

/// (jd - epoch) reduced into [0, period) with subtraction and multiplication.
template <class Real>
Real reduce_phase(Real jd, double epoch, double period) {
    using std::floor;
    const Real dt = jd - Real(epoch);
    const Real turns = floor(dt / Real(period));
    Real x = dt - turns * Real(period);
    if (x < Real(0.0)) x = x + Real(period);
    if (x >= Real(period)) x = x - Real(period);
    return x;
}

template <class Real>
CellLookupT<Real> geocentric_table(const DoubleEntryTable& table, Real jd) {
    const Real u = reduce_phase(jd, table.planet.T_aph.jd, table.planet.P);
    const Real v = reduce_phase(jd, table.earth.T_aph.jd, table.earth.P);
    return detail::lookup_double(table, u, v);
}

}  // namespace urania::detail
