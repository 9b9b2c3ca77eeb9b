#include <doctest.h>

#include <cmath>
#include <random>

#include "heun/errors.hpp"
#include "heun/identities.hpp"
#include "oracles.hpp"

using namespace heun;

namespace {

cplx fuchs_defect(const HeunParams& p) {
  return p.gamma + p.delta + p.epsilon() - (p.alpha + p.beta + 1.0);
}

double derivative_error(const HeunParams& p, int which) {
  const DerivativeIdentity id = derivative_identity(p, which);
  double err = 0.0;
  for (double w = 0.02; w < 0.5; w += 0.04) {
    err = std::max(err, std::abs(heun_eval(p, w).d1 - id.factor(w) * heun_eval(id.params, w).value));
  }
  return err;
}

}  // namespace

TEST_CASE("derivative identities") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.1, 1.5), uk(0.1, 0.9), us(-0.5, 0.5);
  for (int i = 0; i < 5; ++i) {
    HeunParams p{uk(rng), us(rng), u(rng), u(rng), u(rng), u(rng)};
    HeunParams p1 = p, p2 = p, p3 = p, p4 = p;
    p1.s = 0.0;
    p2.s = -p.alpha * p.beta * p.k2;
    p3.s = -p.alpha * p.beta;
    p4.alpha = 0.0;
    CHECK(derivative_error(p1, 1) < 1e-10);
    CHECK(derivative_error(p2, 2) < 1e-10);
    CHECK(derivative_error(p3, 3) < 1e-10);
    CHECK(derivative_error(p4, 4) < 1e-10);
  }

  const HeunParams p{0.5, 0.3, 0.0, 0.7, 1.2, 0.4};
  const DerivativeIdentity d4 = derivative_identity(p, 4);
  const cplx eps = p.epsilon();
  CHECK(std::abs(d4.params.s - (p.s - p.gamma - p.delta - (p.gamma + eps) * p.k2)) < 1e-15);

  // The first-order coefficient fixes the constant: Hn'(0) = −s/γ = 0 when s = 0.
  const HeunParams s0{0.5, 0.0, 0.6, 0.7, 1.2, 0.4};
  const DerivativeIdentity d1 = derivative_identity(s0, 1);
  CHECK(std::abs(d1.factor(0.0)) == 0.0);
  CHECK(std::abs(d1.constant + 0.6 * 0.7 * 0.5 / 2.2) < 1e-15);

  CHECK_THROWS_AS(derivative_identity(p, 1), DomainError);  // s ≠ 0
  CHECK_THROWS_AS(derivative_identity(s0, 4), DomainError);  // α ≠ 0
}

TEST_CASE("Euler transform") {
  const HeunParams p{0.5, 0.1, 0.3, 0.5, 0.9, 0.4};
  const ParameterTransform e = euler_transform(p);
  CHECK(std::abs(fuchs_defect(e.params)) < 1e-15);
  const double w = 0.2;
  CHECK(std::abs(heun_eval(p, w).value - e.prefactor(w) * heun_eval(e.params, w).value) < 1e-11);

  const ParameterTransform twice = euler_transform(e.params);
  CHECK(std::abs(twice.params.s - p.s) < 1e-15);
  CHECK(std::abs(twice.params.alpha - p.alpha) < 1e-15);
  CHECK(std::abs(twice.params.beta - p.beta) < 1e-15);
  CHECK(std::abs(twice.params.delta - p.delta) < 1e-15);

  HeunParams d1 = p;
  d1.delta = 1.0;
  const ParameterTransform id = euler_transform(d1);
  CHECK(id.exponent == cplx(0.0));
  CHECK(id.params.s == d1.s);
  CHECK(std::abs(id.params.alpha - d1.alpha) < 1e-15);
}

TEST_CASE("Pfaff transform") {
  const HeunParams p{0.25, 0.07, 0.3, 0.6, 1.2, 0.5};
  const ParameterTransform t = pfaff_transform(p);
  CHECK(std::abs(fuchs_defect(t.params)) < 1e-15);
  CHECK(std::abs(t.params.k2 - 0.75) < 1e-15);
  CHECK(t.map(0.0) == cplx(0.0));
  for (double w : {0.0, 0.1, 0.3, 0.45}) {
    CHECK(std::abs(heun_eval(p, w).value - t.prefactor(w) * heun_eval(t.params, t.map(w)).value) < 1e-10);
  }
  HeunParams a0 = p;
  a0.alpha = 0.0;
  const ParameterTransform t0 = pfaff_transform(a0);
  CHECK(t0.exponent == cplx(0.0));
  CHECK(std::abs(t0.params.s + a0.s) < 1e-15);
}

TEST_CASE("power-factor transforms") {
  const HeunParams p{0.5, 0.2, 0.6, 0.8, 0.4, 0.3};
  const PowerFactorTransform id = power_factor_transform(p, 0.0, 0.0, 0.0);
  CHECK(id.params.s == p.s);
  CHECK(id.params.gamma == p.gamma);
  CHECK(id.prefactor(0.3, p.k2) == cplx(1.0));

  const PowerFactorTransform g = power_factor_transform(p, 1.0 - p.gamma, 0.0, 0.0);
  CHECK(std::abs(g.params.gamma - (2.0 - p.gamma)) < 1e-15);

  for (int mask = 0; mask < 8; ++mask) {
    const PowerFactorTransform t = power_factor_transform(p, (mask & 1) ? 1.0 - p.gamma : 0.0,
                                                          (mask & 2) ? 1.0 - p.delta : 0.0,
                                                          (mask & 4) ? 1.0 - p.epsilon() : 0.0);
    CHECK(std::abs(fuchs_defect(t.params)) < 1e-14);
    for (double w = 0.05; w < 0.9; w += 0.1) {
      const HeunValue v = power_factor_eval(t, w);
      CHECK(heun_residual(p, w, v.value, v.d1, v.d2) < 1e-10);
    }
  }

  // The eight exponent choices applied to the Carlitz base (k², s; 0, ½, ½, ½).
  const HeunParams c{0.4, 0.3, 0.0, 0.5, 0.5, 0.5};
  for (int mask = 0; mask < 8; ++mask) {
    const PowerFactorTransform t = power_factor_transform(c, (mask & 1) ? 0.5 : 0.0, (mask & 2) ? 0.5 : 0.0,
                                                          (mask & 4) ? 0.5 : 0.0);
    for (double w = 0.05; w < 0.9; w += 0.1) {
      const HeunValue v = power_factor_eval(t, w);
      CHECK(heun_residual(c, w, v.value, v.d1, v.d2) < 1e-10);
    }
  }

  CHECK_THROWS_AS(power_factor_transform(p, 0.3, 0.0, 0.0), DomainError);
}

TEST_CASE("trivial second solution") {
  // γ = δ = ε = 0 with α = 0 forces β = −1 and F₂ = w.
  const HeunParams flat{0.5, 0.0, 0.0, -1.0, 0.0, 0.0};
  for (double w : {0.1, 0.4, 0.7}) CHECK(std::abs(trivial_second_solution(flat, w).value - w) < 1e-14);

  const HeunParams p{0.5, 0.0, 0.0, 0.5, 0.5, 0.5};  // ε = ½
  for (double w = 0.05; w < 0.95; w += 0.1) {
    const auto f = trivial_second_solution(p, w);
    CHECK(heun_residual(p, w, f.value, f.d1, f.d2) < 1e-8);
    CHECK(heun_residual(p, w, 1.0, 0.0, 0.0) == 0.0);
  }
  const HeunParams q{0.3, 0.0, 0.0, 1.1, 1.6, 0.7};
  const auto f = trivial_second_solution(q, 0.3);
  CHECK(f.base == 0.5);
  CHECK(heun_residual(q, 0.3, f.value, f.d1, f.d2) < 1e-8);
  // Against direct quadrature of the integrand.
  const double ref = -oracle::quad(
      [&](double u) {
        return std::pow(u, -1.6) * std::pow(1 - u, -0.7) * std::pow(1 - 0.3 * u, -q.epsilon().real());
      },
      0.3, 0.5);
  CHECK(std::abs(f.value - ref) < 1e-12);
}

TEST_CASE("hypergeometric reductions") {
  for (Reduction r : {Reduction::Kuiken1, Reduction::Kuiken2, Reduction::Kuiken3, Reduction::Maier1,
                      Reduction::Maier2, Reduction::Joyce}) {
    CHECK(parse_reduction(reduction_name(r)) == r);
    const ReductionFree f{0.3, 0.2, 0.9};
    const HeunParams p = reduction_params(r, f);
    CHECK(std::abs(fuchs_defect(p)) < 1e-15);
  }
  const auto j0 = reduction_check(Reduction::Joyce, {}, 0.0);
  CHECK(std::abs(j0.lhs - 1.0) < 1e-15);
  CHECK(std::abs(j0.rhs - 1.0) < 1e-15);

  const auto k3 = reduction_check(Reduction::Kuiken3, {0.3, 0.2, 0.9}, 0.1);
  CHECK(std::abs(k3.lhs - oracle::hyp2f1(0.3, 0.2, 0.9, 4 * 0.1 * 0.9)) < 1e-11);
  CHECK(k3.abs_error() < 1e-11);

  const double w = 0.2;
  const auto m1 = reduction_check(Reduction::Maier1, {0.2, 0.3, 0.0}, w);
  CHECK(std::abs(m1.lhs - oracle::hyp2f1(0.2, 0.3, 0.5, w * (3 - w) * (3 - w) / 4)) < 1e-10);

  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.1, 0.9), uc(0.6, 1.5);
  for (int i = 0; i < 5; ++i) {
    const ReductionFree f{u(rng), u(rng), uc(rng)};
    for (int j = 0; j < 10; ++j) {
      CHECK(reduction_check(Reduction::Kuiken1, f, 0.02 + 0.08 * j).abs_error() < 1e-9);
      CHECK(reduction_check(Reduction::Kuiken2, f, 0.02 + 0.07 * j).abs_error() < 1e-9);
      CHECK(reduction_check(Reduction::Kuiken3, f, 0.02 + 0.035 * j).abs_error() < 1e-9);
      CHECK(reduction_check(Reduction::Maier1, f, 0.02 + 0.06 * j).abs_error() < 1e-9);
      CHECK(reduction_check(Reduction::Maier2, f, 0.02 + 0.014 * j).abs_error() < 1e-9);
      CHECK(reduction_check(Reduction::Joyce, f, 0.09 * j).abs_error() < 1e-9);
    }
  }
  CHECK_THROWS_AS(reduction_check(Reduction::Kuiken3, {0.3, 0.2, 0.9}, 0.6), DomainError);
}
