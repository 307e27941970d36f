#pragma once

#include <cstddef>

#include "urania/tables.hpp"

namespace urania::simd::kernels {

struct PlanetBatch {
    const double* t;
    double* nu;
    double* r;
    std::size_t n;
};

struct DoubleBatch {
    const double* u;  // phases, or Julian dates when `from_jd` is set
    const double* v;
    double* lambda;
    double* beta;
    double* delta;
    std::size_t n;
    bool from_jd;
};

void planet_scalar(const PlanetTable& table, const PlanetBatch& b, std::size_t begin = 0);
void double_scalar(const DoubleEntryTable& table, const DoubleBatch& b, std::size_t begin = 0);

#if defined(URANIA_HAVE_AVX2)
void planet_avx2(const PlanetTable& table, const PlanetBatch& b);
void double_avx2(const DoubleEntryTable& table, const DoubleBatch& b);
#endif

}  // namespace urania::simd::kernels
