#pragma once

#include <span>
#include <string_view>

#include "urania/tables.hpp"

namespace urania::simd {

/// Instruction sets with a batch kernel. Every kernel produces results
/// bit-identical to the scalar reference.
enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// True if this build carries the kernel and the running CPU supports it.
bool isa_available(Isa isa);

/// Best available kernel, unless URANIA_SIMD=scalar is set in the environment.
Isa active_isa();

/// Batch single-entry lookups. All spans must have equal length; every t must
/// lie in [0, P). Throws DomainError otherwise.
void lookup_planet_batch(const PlanetTable& table, std::span<const double> t, std::span<double> nu_aph,
                         std::span<double> r, Isa isa = active_isa());

/// Batch double-entry lookups at phases (u[k], v[k]).
void lookup_double_batch(const DoubleEntryTable& table, std::span<const double> u, std::span<const double> v,
                         std::span<double> lambda, std::span<double> beta, std::span<double> delta,
                         Isa isa = active_isa());

/// Batch table-mode geocentric places at Julian dates `jd`.
void geocentric_batch(const DoubleEntryTable& table, std::span<const double> jd, std::span<double> lambda,
                      std::span<double> beta, std::span<double> delta, Isa isa = active_isa());

}  // namespace urania::simd
