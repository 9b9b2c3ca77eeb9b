#pragma once

// Gauss–Jacobi rules on (0, 1) for weights t^a (1−t)^b, plus a thin adaptive
// integrator for the few places where the integrand has no known weight.

#include <complex>
#include <functional>
#include <span>
#include <type_traits>
#include <vector>

namespace heun {

enum class QuadratureKind { GaussJacobi, Adaptive };

struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::GaussJacobi;
  double exponent_a = 0.0;  // weight t^a
  double exponent_b = 0.0;  // weight (1−t)^b
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;

  /// Σ weights[i]·values[i].
  double integrate_values(std::span<const double> values) const;

  /// Σ weights[i]·f(nodes[i]) for f returning double or std::complex<double>.
  template <class F>
  auto integrate(F&& f) const {
    using R = std::invoke_result_t<F&, double>;
    if constexpr (std::is_same_v<R, double>) {
      std::vector<double> v(nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = f(nodes[i]);
      return integrate_values(v);
    } else {
      std::vector<double> re(nodes.size()), im(nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::complex<double> z = f(nodes[i]);
        re[i] = z.real();
        im[i] = z.imag();
      }
      return std::complex<double>(integrate_values(re), integrate_values(im));
    }
  }
};

/// n-point rule for ∫₀¹ t^a (1−t)^b f(t) dt by Golub–Welsch. Exact for
/// polynomials of degree ≤ 2n−1. Throws DomainError when a or b ≤ −1 or n < 1.
QuadratureRule gauss_jacobi_rule(double a, double b, int n);

/// B(a, b) for a, b > 0.
double beta_function(double a, double b);

/// Adaptive Gauss–Kronrod on [lo, hi]; error estimate returned through err.
double adaptive_integrate(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-13, double* err = nullptr);

}  // namespace heun
