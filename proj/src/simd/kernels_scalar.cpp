#include "kernels_impl.hpp"

#include <cmath>

namespace heun::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void horner(const double* c, std::size_t nc, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = nc; k-- > 0;) acc = acc * x[i] + c[k];
    out[i] = acc;
  }
}

void trig_series(const double* coef, std::size_t nc, int first, int step, bool use_sin,
                 double scale, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = scale * x[i];
    double acc = 0.0;
    for (std::size_t k = 0; k < nc; ++k) {
      const double angle = (first + static_cast<double>(k) * step) * theta;
      acc += coef[k] * (use_sin ? std::sin(angle) : std::cos(angle));
    }
    out[i] = acc;
  }
}

}  // namespace heun::simd::scalar
