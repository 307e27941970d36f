#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>

#include "simd/kernels.hpp"
#include "urania/errors.hpp"
#include "urania/simd.hpp"

namespace urania::simd {

namespace {

void require_sizes(std::size_t n, std::size_t m, const char* what) {
    if (n != m) throw DomainError(std::string(what) + ": span lengths differ");
}

void require_phases(std::span<const double> x, double period, const char* what) {
    for (double t : x) {
        if (!(t >= 0.0 && t < period)) {
            throw DomainError(std::string(what) + ": phase " + std::to_string(t) + " outside [0, " +
                              std::to_string(period) + ")");
        }
    }
}

bool cpu_has_avx2() {
#if defined(URANIA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

void run_double(const DoubleEntryTable& table, const kernels::DoubleBatch& batch, Isa isa) {
    if (table.cells() == 0) throw DomainError("double-entry batch: empty table");
#if defined(URANIA_HAVE_AVX2)
    if (isa == Isa::avx2) {
        kernels::double_avx2(table, batch);
        return;
    }
#endif
    (void)isa;
    kernels::double_scalar(table, batch);
}

Isa checked(Isa isa) {
    if (!isa_available(isa)) throw DomainError("SIMD kernel '" + std::string(to_string(isa)) + "' is not available");
    return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2: return cpu_has_avx2();
    }
    return false;
}

Isa active_isa() {
    static const Isa chosen = [] {
        if (const char* env = std::getenv("URANIA_SIMD"); env != nullptr && std::string_view(env) == "scalar") {
            return Isa::scalar;
        }
        return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    }();
    return chosen;
}

void lookup_planet_batch(const PlanetTable& table, std::span<const double> t, std::span<double> nu_aph,
                         std::span<double> r, Isa isa) {
    checked(isa);
    require_sizes(t.size(), nu_aph.size(), "lookup_planet_batch");
    require_sizes(t.size(), r.size(), "lookup_planet_batch");
    if (table.rows.empty()) throw DomainError("lookup_planet_batch: empty table");
    require_phases(t, table.period(), "lookup_planet_batch");
    const kernels::PlanetBatch batch{t.data(), nu_aph.data(), r.data(), t.size()};
#if defined(URANIA_HAVE_AVX2)
    if (isa == Isa::avx2) {
        kernels::planet_avx2(table, batch);
        return;
    }
#endif
    kernels::planet_scalar(table, batch);
}

void lookup_double_batch(const DoubleEntryTable& table, std::span<const double> u, std::span<const double> v,
                         std::span<double> lambda, std::span<double> beta, std::span<double> delta, Isa isa) {
    checked(isa);
    require_sizes(u.size(), v.size(), "lookup_double_batch");
    require_sizes(u.size(), lambda.size(), "lookup_double_batch");
    require_sizes(u.size(), beta.size(), "lookup_double_batch");
    require_sizes(u.size(), delta.size(), "lookup_double_batch");
    require_phases(u, table.planet.P, "lookup_double_batch (u)");
    require_phases(v, table.earth.P, "lookup_double_batch (v)");
    run_double(table, {u.data(), v.data(), lambda.data(), beta.data(), delta.data(), u.size(), false}, isa);
}

void geocentric_batch(const DoubleEntryTable& table, std::span<const double> jd, std::span<double> lambda,
                      std::span<double> beta, std::span<double> delta, Isa isa) {
    checked(isa);
    require_sizes(jd.size(), lambda.size(), "geocentric_batch");
    require_sizes(jd.size(), beta.size(), "geocentric_batch");
    require_sizes(jd.size(), delta.size(), "geocentric_batch");
    for (double x : jd) {
        if (!std::isfinite(x)) throw DomainError("geocentric_batch: non-finite Julian date");
    }
    run_double(table, {jd.data(), nullptr, lambda.data(), beta.data(), delta.data(), jd.size(), true}, isa);
}

}  // namespace urania::simd
