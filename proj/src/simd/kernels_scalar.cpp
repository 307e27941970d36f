#include "detail/lookup_impl.hpp"
#include "simd/kernels.hpp"

namespace urania::simd::kernels {

void planet_scalar(const PlanetTable& table, const PlanetBatch& b, std::size_t begin) {
    for (std::size_t k = begin; k < b.n; ++k) {
        const auto res = detail::lookup_planet<double>(table, b.t[k]);
        b.nu[k] = res.nu_aph;
        b.r[k] = res.r;
    }
}

void double_scalar(const DoubleEntryTable& table, const DoubleBatch& b, std::size_t begin) {
    for (std::size_t k = begin; k < b.n; ++k) {
        const auto c = b.from_jd ? detail::geocentric_table<double>(table, b.u[k])
                                 : detail::lookup_double<double>(table, b.u[k], b.v[k]);
        b.lambda[k] = c.lambda;
        b.beta[k] = c.beta + 0.0;  // no negative zero
        b.delta[k] = c.delta;
    }
}

}  // namespace urania::simd::kernels
