#include "heun/identities.hpp"

#include <array>
#include <cmath>
#include <string>

#include "heun/errors.hpp"
#include "heun/quadrature.hpp"

namespace heun {

namespace {

constexpr double kPatternTol = 1e-12;

bool near(cplx a, cplx b) { return std::abs(a - b) <= kPatternTol * (1.0 + std::abs(b)); }

}  // namespace

K2ZeroReduction reduce_k2_zero(const HeunParams& p) {
  if (p.k2 != cplx(0.0)) throw DomainError("reduce_k2_zero: requires k2 = 0");
  K2ZeroReduction out;
  out.rho = 0.5 * (p.gamma + p.delta - 1.0);
  const cplx root = std::sqrt(out.rho * out.rho + p.s);
  out.r_plus = out.rho + root;
  out.r_minus = out.rho - root;
  out.spec = {out.r_plus, out.r_minus, p.gamma};
  return out;
}

K2OneReduction reduce_k2_one(const HeunParams& p) {
  if (p.k2 != cplx(1.0)) throw DomainError("reduce_k2_one: requires k2 = 1");
  K2OneReduction out;
  out.rho = 0.5 * (p.gamma - p.alpha - p.beta);
  out.r = out.rho - std::sqrt(out.rho * out.rho - p.alpha * p.beta - p.s);
  out.spec = {out.r + p.alpha, out.r + p.beta, p.gamma};
  return out;
}

TrivialSecondSolution trivial_second_solution(const HeunParams& p, double w, int n_quad) {
  if (std::abs(p.s) > kPatternTol || std::abs(p.alpha * p.beta) > kPatternTol) {
    throw DomainError("trivial_second_solution: requires s = 0 and alpha*beta = 0");
  }
  if (!(w > 0.0 && w < 1.0)) throw DomainError("trivial_second_solution: w must lie in (0, 1)");
  if (std::abs(p.k2 * w) >= 1.0 || (p.k2.imag() == 0.0 && p.k2.real() * w >= 1.0)) {
    throw DomainError("trivial_second_solution: 1/k2 lies on the path");
  }
  const cplx eps = p.epsilon();
  auto smooth = [&](double u) { return std::pow(1.0 - u, -p.delta) * std::pow(1.0 - p.k2 * u, -eps); };
  auto integrand = [&](double u) { return std::pow(cplx(u), -p.gamma) * smooth(u); };

  TrivialSecondSolution out;
  if (p.gamma.imag() == 0.0 && p.gamma.real() < 1.0) {
    out.base = 0.0;
    const QuadratureRule rule = gauss_jacobi_rule(-p.gamma.real(), 0.0, n_quad);
    out.value = std::pow(cplx(w), 1.0 - p.gamma) * rule.integrate([&](double t) { return smooth(w * t); });
  } else {
    out.base = 0.5;
    const QuadratureRule rule = gauss_jacobi_rule(0.0, 0.0, n_quad);
    const double h = w - out.base;
    out.value = h * rule.integrate([&](double t) { return integrand(out.base + h * t); });
  }
  out.d1 = integrand(w);
  out.d2 = out.d1 * (-p.gamma / w + p.delta / (1.0 - w) + eps * p.k2 / (1.0 - p.k2 * w));
  return out;
}

cplx PowerFactorTransform::prefactor(cplx w, cplx k2) const {
  cplx f = 1.0;
  if (rho != cplx(0.0)) f *= std::pow(w, rho);
  if (sigma != cplx(0.0)) f *= std::pow(1.0 - w, sigma);
  if (tau != cplx(0.0)) f *= std::pow(1.0 - k2 * w, tau);
  return f;
}

PowerFactorTransform power_factor_transform(const HeunParams& p, cplx rho, cplx sigma, cplx tau) {
  auto pick = [](cplx v, cplx alt, const char* name) -> cplx {
    if (std::abs(v) <= kPatternTol) return 0.0;
    if (near(v, alt)) return alt;
    throw DomainError(std::string("power_factor_transform: ") + name + " must be 0 or the nonzero exponent");
  };
  PowerFactorTransform out;
  out.rho = pick(rho, 1.0 - p.gamma, "rho");
  out.sigma = pick(sigma, 1.0 - p.delta, "sigma");
  out.tau = pick(tau, 1.0 - p.epsilon(), "tau");

  // Each step trades one exponent at one singular point and leaves the other
  // two untouched, so the steps compose with the current parameters.
  HeunParams q = p;
  if (out.rho != cplx(0.0)) {
    const cplx e = out.rho;
    q.s = q.s - e * (q.delta + q.epsilon() * q.k2);
    q.alpha += e;
    q.beta += e;
    q.gamma = 2.0 - q.gamma;
  }
  if (out.sigma != cplx(0.0)) {
    const cplx e = out.sigma;
    q.s = q.s - q.gamma * e;
    q.alpha += e;
    q.beta += e;
    q.delta = 2.0 - q.delta;
  }
  if (out.tau != cplx(0.0)) {
    const cplx e = out.tau;
    q.s = q.s - e * q.gamma * q.k2;
    q.alpha += e;
    q.beta += e;
  }
  out.params = q;
  return out;
}

HeunValue power_factor_eval(const PowerFactorTransform& t, cplx w, double tol) {
  const cplx k2 = t.params.k2;
  const HeunValue h = heun_eval(t.params, w, tol);
  const cplx P = t.prefactor(w, k2);
  const cplx u = 1.0 - k2 * w;
  const cplx g = t.rho / w - t.sigma / (1.0 - w) - t.tau * k2 / u;
  const cplx g1 = -t.rho / (w * w) - t.sigma / ((1.0 - w) * (1.0 - w)) - t.tau * k2 * k2 / (u * u);
  const cplx P1 = P * g;
  const cplx P2 = P * (g * g + g1);
  return {P * h.value, P1 * h.value + P * h.d1, P2 * h.value + 2.0 * P1 * h.d1 + P * h.d2, h.n_terms,
          std::abs(P) * h.tail_estimate};
}

cplx DerivativeIdentity::factor(cplx w) const {
  switch (which) {
    case 1:
      return constant * w;
    case 2:
      return constant * (1.0 - w);
    case 3:
      return constant * (1.0 - params.k2 * w);
    default:
      return constant;
  }
}

DerivativeIdentity derivative_identity(const HeunParams& p, int which) {
  const cplx k2 = p.k2, a = p.alpha, b = p.beta, g = p.gamma, d = p.delta, e = p.epsilon();
  const cplx ab = a * b;
  DerivativeIdentity out{which, 0.0, p};
  switch (which) {
    case 1:
      if (std::abs(p.s) > kPatternTol) throw DomainError("derivative_identity 1: requires s = 0");
      out.constant = -ab * k2 / (g + 1.0);
      out.params = {k2, -(g + d + 1.0 + (g + e + 1.0) * k2), a + 2.0, b + 2.0, g + 2.0, d + 1.0};
      break;
    case 2:
      if (!near(p.s, -ab * k2)) throw DomainError("derivative_identity 2: requires s = -alpha*beta*k2");
      out.constant = ab * k2 / g;
      out.params = {k2, -(g + d + 1.0 + (g + e + ab) * k2), a + 2.0, b + 2.0, g + 1.0, d + 2.0};
      break;
    case 3:
      if (!near(p.s, -ab)) throw DomainError("derivative_identity 3: requires s = -alpha*beta");
      out.constant = ab / g;
      out.params = {k2, -(g + d + ab + (g + e + 1.0) * k2), a + 2.0, b + 2.0, g + 1.0, d + 1.0};
      break;
    case 4:
      if (std::abs(a) > kPatternTol) throw DomainError("derivative_identity 4: requires alpha = 0");
      out.constant = -p.s / g;
      out.params = {k2, p.s - g - d - (g + e) * k2, 2.0, b + 1.0, g + 1.0, d + 1.0};
      break;
    default:
      throw DomainError("derivative_identity: case must be 1..4");
  }
  if (is_nonpositive_integer(g)) throw DegenerateError("derivative_identity: gamma is a nonpositive integer");
  return out;
}

ParameterTransform euler_transform(const HeunParams& p) {
  ParameterTransform out{ParameterTransform::Kind::Euler, p, 1.0 - p.delta};
  out.params.s = p.s + p.gamma * (p.delta - 1.0);
  out.params.alpha = p.alpha - p.delta + 1.0;
  out.params.beta = p.beta - p.delta + 1.0;
  out.params.delta = 2.0 - p.delta;
  return out;
}

ParameterTransform pfaff_transform(const HeunParams& p) {
  ParameterTransform out{ParameterTransform::Kind::Pfaff, p, -p.alpha};
  out.params.k2 = 1.0 - p.k2;
  out.params.s = -(p.s + p.alpha * p.gamma);
  out.params.beta = p.alpha - p.delta + 1.0;
  out.params.delta = p.alpha - p.beta + 1.0;
  return out;
}

namespace {

constexpr std::array<std::pair<Reduction, std::string_view>, 6> kReductionNames{{
    {Reduction::Kuiken1, "kuiken1"},
    {Reduction::Kuiken2, "kuiken2"},
    {Reduction::Kuiken3, "kuiken3"},
    {Reduction::Maier1, "maier1"},
    {Reduction::Maier2, "maier2"},
    {Reduction::Joyce, "joyce"},
}};

double joyce_argument(double w) {
  return 0.25 * (2.0 - w * std::sqrt(4.0 - w) - (2.0 - w) * std::sqrt(1.0 - w));
}

}  // namespace

std::string_view reduction_name(Reduction r) {
  for (const auto& [k, n] : kReductionNames) {
    if (k == r) return n;
  }
  return "?";
}

std::optional<Reduction> parse_reduction(std::string_view name) {
  for (const auto& [k, n] : kReductionNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

HeunParams reduction_params(Reduction r, const ReductionFree& f) {
  const double a = f.a, b = f.b, c = f.c;
  switch (r) {
    case Reduction::Kuiken1:
      return {-1.0, 0.0, 2 * a, 2 * b, 2 * c - 1, 1 + a + b - c};
    case Reduction::Kuiken2:
      return {0.5, -2 * a * b, 2 * a, 2 * b, c, 1 + 2 * (a + b - c)};
    case Reduction::Kuiken3:
      return {2.0, -4 * a * b, 2 * a, 2 * b, c, c};
    case Reduction::Maier1:
      return {0.25, -2.25 * a * b, 3 * a, 3 * b, 0.5, 2 * (a + b)};
    case Reduction::Maier2:
      return {0.5, -8 * a * b, 4 * a, 4 * b, a + b + 0.5, 2 * (a + b)};
    case Reduction::Joyce:
      return {0.25, -0.125, 0.5, 0.5, 1.0, 0.5};
  }
  throw DomainError("reduction_params: unknown reduction");
}

ReductionSides reduction_check(Reduction r, const ReductionFree& f, double w) {
  ReductionSides out;
  out.heun = reduction_params(r, f);
  out.prefactor = 1.0;
  const double a = f.a, b = f.b, c = f.c;
  switch (r) {
    case Reduction::Kuiken1:
      out.hyp = {a, b, c};
      out.argument = w * w;
      break;
    case Reduction::Kuiken2:
      out.hyp = {a, b, c};
      out.argument = w * (2.0 - w);
      break;
    case Reduction::Kuiken3:
      out.hyp = {a, b, c};
      out.argument = 4.0 * w * (1.0 - w);
      break;
    case Reduction::Maier1:
      out.hyp = {a, b, 0.5};
      out.argument = w * (3.0 - w) * (3.0 - w) / 4.0;
      break;
    case Reduction::Maier2:
      out.hyp = {a, b, a + b + 0.5};
      out.argument = 4.0 * w * (2.0 - w) * (1.0 - w) * (1.0 - w);
      break;
    case Reduction::Joyce:
      if (!(w >= 0.0 && w < 1.0)) throw DomainError("reduction_check: joyce requires w in [0, 1)");
      out.hyp = {0.5, 0.5, 1.0};
      out.argument = joyce_argument(w);
      out.prefactor = std::sqrt(std::sqrt(4.0 - w) - std::sqrt(1.0 - w));
      break;
  }
  if (!(std::abs(w) < (1.0 - 1e-6) * out.heun.radius())) {
    throw DomainError("reduction_check: w outside the Heun series disk");
  }
  if (!(std::abs(out.argument) < 1.0)) throw DomainError("reduction_check: |R(w)| must be below 1");
  out.lhs = heun_eval(out.heun, w).value;
  out.rhs = out.prefactor * hyp2f1(out.hyp, out.argument);
  return out;
}

}  // namespace heun
