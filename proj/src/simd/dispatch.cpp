#include "heun/simd.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace heun::simd {

namespace {

Isa detect() {
  if (const char* env = std::getenv("HEUN_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return Isa::Scalar;
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd kernel: span sizes differ");
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(HEUN_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double dot(std::span<const double> a, std::span<const double> b, Isa isa) {
  require_same_size(a.size(), b.size());
#if defined(HEUN_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return avx2::dot(a.data(), b.data(), a.size());
#endif
  (void)isa;
  return scalar::dot(a.data(), b.data(), a.size());
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out,
            Isa isa) {
  require_same_size(x.size(), out.size());
#if defined(HEUN_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) {
    avx2::horner(coeffs.data(), coeffs.size(), x.data(), out.data(), x.size());
    return;
  }
#endif
  (void)isa;
  scalar::horner(coeffs.data(), coeffs.size(), x.data(), out.data(), x.size());
}

void trig_series(std::span<const double> coef, int first, int step, bool use_sin, double scale,
                 std::span<const double> x, std::span<double> out, Isa isa) {
  require_same_size(x.size(), out.size());
#if defined(HEUN_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) {
    avx2::trig_series(coef.data(), coef.size(), first, step, use_sin, scale, x.data(), out.data(),
                      x.size());
    return;
  }
#endif
  (void)isa;
  scalar::trig_series(coef.data(), coef.size(), first, step, use_sin, scale, x.data(), out.data(),
                      x.size());
}

}  // namespace heun::simd
