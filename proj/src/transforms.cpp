#include "heun/transforms.hpp"

#include <cmath>
#include <string>

#include "heun/errors.hpp"
#include "heun/hypergeometric.hpp"
#include "heun/quadrature.hpp"

namespace heun {

namespace {

constexpr double kIdentityTol = 1e-14;

void require_kernel(double lower, double upper, const char* who) {
  if (!(upper > lower && lower > 0.0)) {
    throw DomainError(std::string(who) + ": requires Re gamma > Re alpha > 0");
  }
}

void require_disk(cplx w, double radius, const char* who) {
  if (!(std::abs(w) < (1.0 - 1e-6) * radius)) throw DomainError(std::string(who) + ": w outside series disk");
}

// Γ(c)/(Γ(λ)Γ(c−λ)) ∫ t^{λ−1}(1−t)^{c−λ−1} f(t) dt.
template <class F>
cplx beta_average(double lambda, double c, int n_quad, F&& f) {
  const QuadratureRule rule = gauss_jacobi_rule(lambda - 1.0, c - lambda - 1.0, n_quad);
  return rule.integrate(f) / beta_function(lambda, c - lambda);
}

}  // namespace

HeunParams integral_transform_params(const HeunParams& p) {
  return {p.k2, p.s, p.gamma, p.beta, p.alpha, p.delta + p.gamma - p.alpha};
}

TransformSides integral_transform_check(const HeunParams& p, cplx w, int n_quad) {
  if (p.alpha.imag() != 0.0 || p.gamma.imag() != 0.0) {
    throw DomainError("integral_transform_check: alpha and gamma must be real");
  }
  const double a = p.alpha.real(), g = p.gamma.real();
  require_kernel(a, g + kIdentityTol, "integral_transform_check");
  require_disk(w, p.radius(), "integral_transform_check");
  TransformSides out;
  out.lhs = heun_eval(p, w).value;
  const HeunParams q = integral_transform_params(p);
  if (std::abs(g - a) <= kIdentityTol) {
    out.rhs = heun_eval(q, w).value;
    return out;
  }
  out.rhs = beta_average(a, g, n_quad, [&](double t) { return heun_eval(q, w * t).value; });
  return out;
}

TransformSides bateman_limit_check(cplx a, cplx b, double c, double lambda, cplx w, int n_quad) {
  require_kernel(lambda, c + kIdentityTol, "bateman_limit_check");
  require_disk(w, 1.0, "bateman_limit_check");
  TransformSides out;
  out.lhs = hyp2f1(a, b, c, w);
  if (std::abs(c - lambda) <= kIdentityTol) {
    out.rhs = hyp2f1(a, b, lambda, w);
    return out;
  }
  out.rhs = beta_average(lambda, c, n_quad, [&](double t) { return hyp2f1(a, b, lambda, w * t); });
  return out;
}

TransformSides k2_one_transform_check(double alpha, cplx beta, double gamma, cplx s, cplx w, int n_quad) {
  require_kernel(alpha, gamma + kIdentityTol, "k2_one_transform_check");
  require_disk(w, 1.0, "k2_one_transform_check");
  const cplx rho = 0.5 * (gamma - alpha - beta);
  const cplx r = rho - std::sqrt(rho * rho - alpha * beta - s);
  const cplx rho_t = -0.5 * (gamma - alpha + beta);
  const cplx r_t = rho_t - std::sqrt(rho_t * rho_t - beta * gamma - s);
  TransformSides out;
  out.lhs = std::pow(1.0 - w, r) * hyp2f1(r + alpha, r + beta, gamma, w);
  auto inner = [&](cplx x) { return std::pow(1.0 - x, r_t) * hyp2f1(r_t + gamma, r_t + beta, alpha, x); };
  if (std::abs(gamma - alpha) <= kIdentityTol) {
    out.rhs = inner(w);
    return out;
  }
  out.rhs = beta_average(alpha, gamma, n_quad, [&](double t) { return inner(w * t); });
  return out;
}

}  // namespace heun
