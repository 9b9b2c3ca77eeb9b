#pragma once

// Data-parallel kernels behind the series and quadrature code. Every kernel
// has a scalar reference implementation; an AVX2/FMA variant is compiled when
// the toolchain supports it and chosen at runtime when the CPU does.
// HEUN_SIMD=scalar in the environment forces the reference path.

#include <span>
#include <string_view>

namespace heun::simd {

enum class Isa { Scalar, Avx2 };

bool isa_available(Isa isa);
Isa active_isa();
std::string_view isa_name(Isa isa);

/// Σ a[i]·b[i].
double dot(std::span<const double> a, std::span<const double> b, Isa isa = active_isa());

/// out[i] = Σ_n coeffs[n]·x[i]^n (Horner).
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out,
            Isa isa = active_isa());

/// out[i] = Σ_n coef[n]·f((first + n·step)·scale·x[i]) with f = sin when
/// use_sin, cos otherwise. The multipliers form an arithmetic progression,
/// which is what the theta q-series need.
void trig_series(std::span<const double> coef, int first, int step, bool use_sin, double scale,
                 std::span<const double> x, std::span<double> out, Isa isa = active_isa());

}  // namespace heun::simd
