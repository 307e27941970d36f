// AVX2 versions of the table lookup kernels. Each lane performs exactly the
// operation sequence of the scalar templates in detail/lookup_impl.hpp; this
// file is compiled without FMA so no multiply-add is fused.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "simd/kernels.hpp"

namespace urania::simd::kernels {

namespace {

static_assert(sizeof(TableRow) == 5 * sizeof(double), "TableRow must be five packed doubles");

constexpr int kLanes = 4;

inline __m128i to_index(__m256d whole) { return _mm256_cvttpd_epi32(whole); }

inline __m256d gather(const double* base, __m128i idx) { return _mm256_i32gather_pd(base, idx, 8); }

inline __m256d select(__m256d mask, __m256d if_true, __m256d if_false) {
    return _mm256_blendv_pd(if_false, if_true, mask);
}

inline __m256d floor_pd(__m256d x) { return _mm256_floor_pd(x); }

/// Same as detail::clamp_index, held as whole doubles.
inline __m256d clamp_index(__m256d floored, double last) {
    const __m256d zero = _mm256_setzero_pd();
    __m256d i = select(_mm256_cmp_pd(floored, zero, _CMP_GT_OQ), floored, zero);
    return _mm256_min_pd(i, _mm256_set1_pd(last));
}

inline __m256d fold_diff(__m256d d) {
    const __m256d full = _mm256_set1_pd(360.0);
    const __m256d hi = _mm256_cmp_pd(d, _mm256_set1_pd(180.0), _CMP_GT_OQ);
    const __m256d lo = _mm256_cmp_pd(d, _mm256_set1_pd(-180.0), _CMP_LE_OQ);
    return select(hi, _mm256_sub_pd(d, full), select(lo, _mm256_add_pd(d, full), d));
}

inline __m256d bilerp(__m256d c00, __m256d c10, __m256d c01, __m256d c11, __m256d fu, __m256d fv) {
    const __m256d left = _mm256_add_pd(c00, _mm256_mul_pd(fv, _mm256_sub_pd(c01, c00)));
    const __m256d right = _mm256_add_pd(c10, _mm256_mul_pd(fv, _mm256_sub_pd(c11, c10)));
    return _mm256_add_pd(left, _mm256_mul_pd(fu, _mm256_sub_pd(right, left)));
}

inline __m256d node_at(__m256d i, __m256d period, __m256d count) {
    return _mm256_div_pd(_mm256_mul_pd(i, period), count);
}

struct Axis {
    __m256d i;     // cell index as a whole double
    __m256d frac;
};

inline Axis locate(__m256d x, double period, std::size_t n) {
    const __m256d count = _mm256_set1_pd(static_cast<double>(n));
    const __m256d p = _mm256_set1_pd(period);
    const __m256d scale = _mm256_set1_pd(static_cast<double>(n) / period);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();

    __m256d i = clamp_index(floor_pd(_mm256_mul_pd(x, scale)), static_cast<double>(n - 1));
    __m256d node = node_at(i, p, count);
    const __m256d back = _mm256_and_pd(_mm256_cmp_pd(i, zero, _CMP_GT_OQ), _mm256_cmp_pd(x, node, _CMP_LT_OQ));
    i = select(back, _mm256_sub_pd(i, one), i);
    node = select(back, node_at(i, p, count), node);

    const __m256d ip1 = _mm256_add_pd(i, one);
    const __m256d next = node_at(ip1, p, count);
    const __m256d fwd = _mm256_and_pd(_mm256_cmp_pd(ip1, count, _CMP_LT_OQ), _mm256_cmp_pd(x, next, _CMP_GE_OQ));
    i = select(fwd, ip1, i);
    node = select(fwd, next, node);
    return {i, _mm256_mul_pd(_mm256_sub_pd(x, node), scale)};
}

inline __m256d reduce_phase(__m256d jd, double epoch, double period) {
    const __m256d p = _mm256_set1_pd(period);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d dt = _mm256_sub_pd(jd, _mm256_set1_pd(epoch));
    const __m256d turns = floor_pd(_mm256_div_pd(dt, p));
    __m256d x = _mm256_sub_pd(dt, _mm256_mul_pd(turns, p));
    x = select(_mm256_cmp_pd(x, zero, _CMP_LT_OQ), _mm256_add_pd(x, p), x);
    x = select(_mm256_cmp_pd(x, p, _CMP_GE_OQ), _mm256_sub_pd(x, p), x);
    return x;
}

}  // namespace

void planet_avx2(const PlanetTable& table, const PlanetBatch& b) {
    const std::size_t rows = table.rows.size();
    const double* base = &table.rows[0].t;
    const __m256d step = _mm256_set1_pd(table.step);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d count = _mm256_set1_pd(static_cast<double>(rows));
    const __m256d period = _mm256_set1_pd(table.elements.P);
    const __m256d r_first = _mm256_set1_pd(table.rows[0].r);
    const __m128i stride = _mm_set1_epi32(5);
    auto field = [&](__m256d idx, int column) {
        return gather(base + column, _mm_mullo_epi32(to_index(idx), stride));
    };

    std::size_t k = 0;
    for (; k + kLanes <= b.n; k += kLanes) {
        const __m256d t = _mm256_loadu_pd(b.t + k);
        __m256d i = clamp_index(floor_pd(_mm256_div_pd(t, step)), static_cast<double>(rows - 1));
        const __m256d back = _mm256_and_pd(_mm256_cmp_pd(i, zero, _CMP_GT_OQ), _mm256_cmp_pd(t, field(i, 0), _CMP_LT_OQ));
        i = select(back, _mm256_sub_pd(i, one), i);

        __m256d ip1 = _mm256_add_pd(i, one);
        __m256d has_next = _mm256_cmp_pd(ip1, count, _CMP_LT_OQ);
        const __m256d safe_next = select(has_next, ip1, zero);
        const __m256d fwd = _mm256_and_pd(has_next, _mm256_cmp_pd(t, field(safe_next, 0), _CMP_GE_OQ));
        i = select(fwd, ip1, i);

        ip1 = _mm256_add_pd(i, one);
        has_next = _mm256_cmp_pd(ip1, count, _CMP_LT_OQ);
        const __m256d next = select(has_next, ip1, zero);

        const __m256d t0 = field(i, 0);
        const __m256d nu0 = field(i, 1);
        const __m256d r0 = field(i, 2);
        const __m256d md = field(i, 3);
        const __m256d mh = field(i, 4);
        const __m256d t1 = select(has_next, field(next, 0), period);
        const __m256d r1 = select(has_next, field(next, 2), r_first);

        const __m256d off = _mm256_sub_pd(t, t0);
        const __m256d days = floor_pd(off);
        const __m256d hours = _mm256_mul_pd(_mm256_sub_pd(off, days), _mm256_set1_pd(24.0));
        __m256d nu = _mm256_add_pd(_mm256_add_pd(nu0, _mm256_mul_pd(days, md)), _mm256_mul_pd(hours, mh));
        const __m256d full = _mm256_set1_pd(360.0);
        nu = select(_mm256_cmp_pd(nu, full, _CMP_GE_OQ), _mm256_sub_pd(nu, full), nu);

        const __m256d frac = _mm256_div_pd(off, _mm256_sub_pd(t1, t0));
        const __m256d r = _mm256_add_pd(r0, _mm256_mul_pd(frac, _mm256_sub_pd(r1, r0)));
        _mm256_storeu_pd(b.nu + k, nu);
        _mm256_storeu_pd(b.r + k, r);
    }
    planet_scalar(table, b, k);
}

void double_avx2(const DoubleEntryTable& table, const DoubleBatch& b) {
    const __m128i n_v = _mm_set1_epi32(static_cast<int>(table.n_v));
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d count_u = _mm256_set1_pd(static_cast<double>(table.n_u));
    const __m256d count_v = _mm256_set1_pd(static_cast<double>(table.n_v));
    const __m256d full = _mm256_set1_pd(360.0);

    std::size_t k = 0;
    for (; k + kLanes <= b.n; k += kLanes) {
        __m256d u, v;
        if (b.from_jd) {
            const __m256d jd = _mm256_loadu_pd(b.u + k);
            u = reduce_phase(jd, table.planet.T_aph.jd, table.planet.P);
            v = reduce_phase(jd, table.earth.T_aph.jd, table.earth.P);
        } else {
            u = _mm256_loadu_pd(b.u + k);
            v = _mm256_loadu_pd(b.v + k);
        }
        const Axis pu = locate(u, table.planet.P, table.n_u);
        const Axis pv = locate(v, table.earth.P, table.n_v);
        const __m256d iu1 = [&] {
            const __m256d up = _mm256_add_pd(pu.i, one);
            return select(_mm256_cmp_pd(up, count_u, _CMP_EQ_OQ), zero, up);
        }();
        const __m256d iv1 = [&] {
            const __m256d up = _mm256_add_pd(pv.i, one);
            return select(_mm256_cmp_pd(up, count_v, _CMP_EQ_OQ), zero, up);
        }();
        const __m128i row0 = _mm_mullo_epi32(to_index(pu.i), n_v);
        const __m128i row1 = _mm_mullo_epi32(to_index(iu1), n_v);
        const __m128i col0 = to_index(pv.i);
        const __m128i col1 = to_index(iv1);
        const __m128i k00 = _mm_add_epi32(row0, col0);
        const __m128i k10 = _mm_add_epi32(row1, col0);
        const __m128i k01 = _mm_add_epi32(row0, col1);
        const __m128i k11 = _mm_add_epi32(row1, col1);

        const double* lam = table.lambda.data();
        const __m256d l00 = gather(lam, k00);
        const __m256d d10 = fold_diff(_mm256_sub_pd(gather(lam, k10), l00));
        const __m256d d01 = fold_diff(_mm256_sub_pd(gather(lam, k01), l00));
        const __m256d d11 = fold_diff(_mm256_sub_pd(gather(lam, k11), l00));
        const __m256d left = _mm256_mul_pd(pv.frac, d01);
        const __m256d right = _mm256_add_pd(d10, _mm256_mul_pd(pv.frac, _mm256_sub_pd(d11, d10)));
        __m256d lambda = _mm256_add_pd(l00, _mm256_add_pd(left, _mm256_mul_pd(pu.frac, _mm256_sub_pd(right, left))));
        lambda = select(_mm256_cmp_pd(lambda, zero, _CMP_LT_OQ), _mm256_add_pd(lambda, full), lambda);
        lambda = select(_mm256_cmp_pd(lambda, full, _CMP_GE_OQ), _mm256_sub_pd(lambda, full), lambda);

        const double* bet = table.beta.data();
        const double* del = table.delta.data();
        const __m256d beta = bilerp(gather(bet, k00), gather(bet, k10), gather(bet, k01), gather(bet, k11),
                                    pu.frac, pv.frac);
        const __m256d delta = bilerp(gather(del, k00), gather(del, k10), gather(del, k01), gather(del, k11),
                                     pu.frac, pv.frac);
        _mm256_storeu_pd(b.lambda + k, lambda);
        _mm256_storeu_pd(b.beta + k, _mm256_add_pd(beta, zero));
        _mm256_storeu_pd(b.delta + k, delta);
    }
    double_scalar(table, b, k);
}

}  // namespace urania::simd::kernels
