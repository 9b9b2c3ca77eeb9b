#pragma once

#include <cstddef>

namespace heun::simd {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void horner(const double* c, std::size_t nc, const double* x, double* out, std::size_t n);
void trig_series(const double* coef, std::size_t nc, int first, int step, bool use_sin,
                 double scale, const double* x, double* out, std::size_t n);
}  // namespace scalar

#if defined(HEUN_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void horner(const double* c, std::size_t nc, const double* x, double* out, std::size_t n);
void trig_series(const double* coef, std::size_t nc, int first, int step, bool use_sin,
                 double scale, const double* x, double* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace heun::simd
