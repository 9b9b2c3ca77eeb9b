#pragma once

// Independent reference implementations used only by the tests. They share
// no code with the library beyond the parameter structs.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "heun/series.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline double quad(const std::function<double(double)>& f, double lo, double hi) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 8, 1e-15);
}

inline double agm(double a, double b) {
  for (int i = 0; i < 60 && std::abs(a - b) > 1e-17 * a; ++i) {
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return 0.5 * (a + b);
}

inline double K_agm(double k2) { return M_PI / (2.0 * agm(1.0, std::sqrt(1.0 - k2))); }

// Jacobi θ functions in the usual (v, q) form, fixed long truncation.
inline double theta1(double v, double q, int terms = 50) {
  double s = 0.0;
  for (int n = 0; n < terms; ++n) {
    s += (n % 2 ? -1.0 : 1.0) * std::pow(q, (n + 0.5) * (n + 0.5)) * std::sin((2 * n + 1) * v);
  }
  return 2.0 * s;
}
inline double theta4(double v, double q, int terms = 50) {
  double s = 1.0;
  for (int n = 1; n < terms; ++n) s += 2.0 * (n % 2 ? -1.0 : 1.0) * std::pow(q, n * n) * std::cos(2 * n * v);
  return s;
}

// Plain Gauss series, long double accumulation, fixed term budget.
inline cplx hyp2f1(cplx a, cplx b, cplx c, cplx x, int terms = 4000) {
  std::complex<long double> term = 1.0L, sum = 1.0L;
  const std::complex<long double> A(a), B(b), C(c), X(x);
  for (int n = 0; n < terms; ++n) {
    const long double nn = n;
    term *= (A + nn) * (B + nn) / ((C + nn) * (nn + 1.0L)) * X;
    sum += term;
    if (std::abs(term) < 1e-30L * std::abs(sum)) break;
  }
  return cplx(sum);
}

// Local Heun function from the standard form
//   y'' + (γ/z + δ/(z−1) + ε/(z−a)) y' + (αβz − q)/(z(z−1)(z−a)) y = 0
// with a = 1/k² and q = −s/k², i.e. the same equation written with a pole at a.
inline std::vector<cplx> standard_form_coeffs(const heun::HeunParams& p, int n) {
  const cplx a = 1.0 / p.k2;
  const cplx q = -p.s / p.k2;
  const cplx eps = p.epsilon();
  std::vector<cplx> c(static_cast<std::size_t>(n + 1), 0.0);
  c[0] = 1.0;
  if (n >= 1) c[1] = q / (a * p.gamma);
  for (int m = 1; m < n; ++m) {
    const double mm = m;
    const cplx R = a * (mm + 1.0) * (mm + p.gamma);
    const cplx Q = mm * ((mm - 1.0 + p.gamma) * (1.0 + a) + a * p.delta + eps);
    const cplx P = (mm - 1.0 + p.alpha) * (mm - 1.0 + p.beta);
    c[m + 1] = ((Q + q) * c[m] - P * c[m - 1]) / R;
  }
  return c;
}

inline cplx standard_form_eval(const heun::HeunParams& p, cplx w, int n = 3000) {
  const auto c = standard_form_coeffs(p, n);
  cplx sum = 0.0;
  for (int m = n; m >= 0; --m) sum = sum * w + c[m];
  return sum;
}

}  // namespace oracle
