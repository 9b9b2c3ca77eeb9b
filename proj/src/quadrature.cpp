#include "heun/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "heun/errors.hpp"
#include "heun/simd.hpp"

namespace heun {

double QuadratureRule::integrate_values(std::span<const double> values) const {
  return simd::dot(weights, values);
}

double beta_function(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("beta_function: arguments must be positive");
  if (a + b < 150.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

QuadratureRule gauss_jacobi_rule(double a, double b, int n) {
  if (!(a > -1.0 && b > -1.0)) throw DomainError("gauss_jacobi_rule: exponent <= -1 is not integrable");
  if (n < 1) throw DomainError("gauss_jacobi_rule: n must be at least 1");
  // Jacobi weight (1−x)^α (1+x)^β on [−1, 1] with t = (1+x)/2.
  const double al = b;
  const double be = a;
  const double ab = al + be;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 0);
  diag(0) = (be - al) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    diag(k) = (be * be - al * al) / (t * (t + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * k * (k + al) * (k + be) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    }
    off(k - 1) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw ConvergenceError("gauss_jacobi_rule: eigensolver failed");
  const double mu0 = beta_function(a + 1.0, b + 1.0);
  QuadratureRule rule;
  rule.kind = QuadratureKind::GaussJacobi;
  rule.exponent_a = a;
  rule.exponent_b = b;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (1.0 + solver.eigenvalues()(i));
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

double adaptive_integrate(const std::function<double(double)>& f, double lo, double hi, double tol,
                          double* err) {
  double e = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 20, tol, &e);
  if (err != nullptr) *err = e;
  return v;
}

}  // namespace heun
