// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "kernels_impl.hpp"

#include <immintrin.h>

#include <cmath>

namespace heun::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void horner(const double* c, std::size_t nc, const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = nc; k-- > 0;) acc = _mm256_fmadd_pd(acc, xv, _mm256_set1_pd(c[k]));
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = nc; k-- > 0;) acc = std::fma(acc, x[i], c[k]);
    out[i] = acc;
  }
}

// The angles (first + k·step)·θ advance by a fixed rotation per lane, so
// sin/cos are only evaluated twice per point and the series runs as FMAs.
void trig_series(const double* coef, std::size_t nc, int first, int step, bool use_sin,
                 double scale, const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  alignas(32) double s0[4], c0[4], sd[4], cd[4];
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) {
      const double theta = scale * x[i + l];
      s0[l] = std::sin(first * theta);
      c0[l] = std::cos(first * theta);
      sd[l] = std::sin(step * theta);
      cd[l] = std::cos(step * theta);
    }
    __m256d s = _mm256_load_pd(s0);
    __m256d c = _mm256_load_pd(c0);
    const __m256d rs = _mm256_load_pd(sd);
    const __m256d rc = _mm256_load_pd(cd);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < nc; ++k) {
      acc = _mm256_fmadd_pd(_mm256_set1_pd(coef[k]), use_sin ? s : c, acc);
      const __m256d s_next = _mm256_fmadd_pd(s, rc, _mm256_mul_pd(c, rs));
      c = _mm256_fmsub_pd(c, rc, _mm256_mul_pd(s, rs));
      s = s_next;
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    const double theta = scale * x[i];
    double acc = 0.0;
    for (std::size_t k = 0; k < nc; ++k) {
      const double angle = (first + static_cast<double>(k) * step) * theta;
      acc += coef[k] * (use_sin ? std::sin(angle) : std::cos(angle));
    }
    out[i] = acc;
  }
}

}  // namespace heun::simd::avx2
