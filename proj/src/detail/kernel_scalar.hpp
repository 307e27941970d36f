#pragma once

// Scalar-generic helpers shared by the templated kernels. Every kernel is
// instantiated for `double` and for `CountedReal`.

#include <cmath>
#include <numbers>
#include <type_traits>

#include "urania/op_counter.hpp"

namespace urania::detail {

template <class Real>
inline constexpr bool is_counted_v = std::is_same_v<Real, CountedReal>;

template <class Real>
inline void tick_rows(std::uint64_t n) {
    if constexpr (is_counted_v<Real>) CountedReal::tick_row(n);
}

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class Real>
Real to_rad(Real deg) {
    return deg * Real(std::numbers::pi / 180.0);
}

template <class Real>
Real to_deg(Real rad) {
    return rad * Real(180.0 / std::numbers::pi);
}

/// [0, 360) with +0 for zero results.
template <class Real>
Real normalize_deg(Real x) {
    using std::fmod;
    Real r = fmod(x, Real(360.0));
    if (r < Real(0.0)) r = r + Real(360.0);
    if (r >= Real(360.0)) r = r - Real(360.0);
    if (r == Real(0.0)) r = Real(0.0);
    return r;
}

template <class Real>
Real normalize_rad(Real x) {
    using std::fmod;
    Real r = fmod(x, Real(kTwoPi));
    if (r < Real(0.0)) r = r + Real(kTwoPi);
    if (r >= Real(kTwoPi)) r = r - Real(kTwoPi);
    return r;
}

/// Fold a difference of two normalized angles into (-180, 180]. Only
/// comparisons and additions, so it is safe on the table query path.
template <class Real>
Real fold_diff_deg(Real d) {
    if (d > Real(180.0)) {
        d = d - Real(360.0);
    } else if (d <= Real(-180.0)) {
        d = d + Real(360.0);
    }
    return d;
}

/// Exact-zero canonicalization so that -0.0 never reaches tables or output.
inline double canonical_zero(double x) { return x == 0.0 ? 0.0 : x; }

}  // namespace urania::detail
