#include <doctest.h>

#include <cmath>
#include <random>

#include "heun/elliptic.hpp"
#include "heun/errors.hpp"
#include "oracles.hpp"

using namespace heun;

TEST_CASE("complete integrals") {
  CHECK(complete_elliptic_K(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(complete_elliptic_E(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(complete_elliptic_E(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(complete_elliptic_K(1.0), DomainError);

  const double K = oracle::quad([](double t) { return 1.0 / std::sqrt(1.0 - 0.5 * std::sin(t) * std::sin(t)); }, 0.0,
                                M_PI / 2);
  const double E = oracle::quad([](double t) { return std::sqrt(1.0 - 0.5 * std::sin(t) * std::sin(t)); }, 0.0,
                                M_PI / 2);
  CHECK(std::abs(complete_elliptic_K(0.5) - K) < 1e-13);
  CHECK(std::abs(complete_elliptic_E(0.5) - E) < 1e-13);
}

TEST_CASE("context") {
  const EllipticContext half(0.5);
  CHECK(std::abs(half.K() - half.Kprime()) < 1e-14);
  CHECK(std::abs(half.q() - std::exp(-M_PI)) < 1e-15);
  CHECK(half.k2() + half.kprime2() == 1.0);

  const EllipticContext quarter(0.25);
  const double q = std::exp(-M_PI * oracle::K_agm(0.75) / oracle::K_agm(0.25));
  CHECK(std::abs(quarter.q() - q) < 1e-13);
}

TEST_CASE("Legendre relation over random moduli") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int i = 0; i < 20; ++i) {
    const EllipticContext ctx(u(rng));
    CHECK(std::abs(ctx.legendre_residual()) < 1e-12);
  }
}

TEST_CASE("theta functions") {
  const EllipticContext ctx(0.5);
  const double K = ctx.K();
  CHECK(std::abs(theta_real(ThetaKind::H, 0.0, ctx)) < 1e-16);
  for (double z : {0.1, 0.7, 1.3}) {
    CHECK(std::abs(theta_real(ThetaKind::H, z + 2 * K, ctx) + theta_real(ThetaKind::H, z, ctx)) < 1e-13);
    CHECK(std::abs(theta_real(ThetaKind::H, -z, ctx) + theta_real(ThetaKind::H, z, ctx)) < 1e-15);
    CHECK(std::abs(theta_real(ThetaKind::Theta, -z, ctx) - theta_real(ThetaKind::Theta, z, ctx)) < 1e-15);
    const double v = M_PI * z / (2 * K);
    CHECK(std::abs(theta_real(ThetaKind::H, z, ctx) - oracle::theta1(v, ctx.q())) < 1e-12);
  }
  CHECK(std::abs(theta_real(ThetaKind::Theta, 0.0, ctx) - oracle::theta4(0.0, ctx.q())) < 1e-13);
}

TEST_CASE("theta grid matches pointwise evaluation") {
  const EllipticContext ctx(0.3);
  std::vector<double> z, out(33);
  for (int i = 0; i < 33; ++i) z.push_back(-2.0 + 0.17 * i);
  for (ThetaKind k : {ThetaKind::H, ThetaKind::H1, ThetaKind::Theta, ThetaKind::Theta1}) {
    for (int d = 0; d <= 2; ++d) {
      theta_grid(k, z, ctx, out, d);
      for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(out[i] - theta_real(k, z[i], ctx, d)) < 1e-12);
    }
  }
}

TEST_CASE("Jacobi functions") {
  const EllipticContext ctx(0.5);
  const auto j0 = jacobi_sn_cn_dn(0.0, ctx);
  CHECK(j0.sn == doctest::Approx(0.0));
  CHECK(j0.cn == doctest::Approx(1.0));
  CHECK(j0.dn == doctest::Approx(1.0));
  const auto jK = jacobi_sn_cn_dn(ctx.K(), ctx);
  CHECK(std::abs(jK.sn - 1.0) < 1e-13);
  CHECK(std::abs(jK.cn) < 1e-13);
  CHECK(std::abs(jK.dn - ctx.kprime()) < 1e-13);

  const EllipticContext c3(0.3);
  CHECK(std::abs(inverse_sn(jacobi_sn_cn_dn(0.7, c3).sn, c3) - 0.7) < 1e-12);
  const EllipticContext c4(0.4);
  CHECK(std::abs(jacobi_sn_cn_dn(inverse_sn(0.6, c4), c4).sn - 0.6) < 1e-12);
  CHECK(inverse_sn(0.0, c4) == 0.0);
  CHECK(std::abs(inverse_sn(1.0, c4) - c4.K()) < 1e-12);
  for (int i = 1; i < 20; ++i) {
    const double x = i / 20.0;
    CHECK(std::abs(jacobi_sn_cn_dn(inverse_sn(x, c3), c3).sn - x) < 1e-12);
  }
}

TEST_CASE("Pythagorean identities, property") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uk(0.05, 0.95), uz(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const EllipticContext ctx(uk(rng));
    const auto j = jacobi_sn_cn_dn(uz(rng), ctx);
    CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-12);
    CHECK(std::abs(j.dn * j.dn + ctx.k2() * j.sn * j.sn - 1.0) < 1e-12);
  }
}

TEST_CASE("complex Jacobi functions agree with real ones and satisfy the identities") {
  const EllipticContext ctx(0.6);
  for (double x : {0.2, 1.1, 2.9}) {
    const auto r = jacobi_sn_cn_dn(x, ctx);
    const auto c = jacobi_sn_cn_dn(cplx(x, 0.0), ctx);
    CHECK(std::abs(c.sn - r.sn) < 1e-13);
    const auto w = jacobi_sn_cn_dn(cplx(x, 0.4), ctx);
    CHECK(std::abs(w.sn * w.sn + w.cn * w.cn - 1.0) < 1e-12);
    CHECK(std::abs(w.dn * w.dn + ctx.k2() * w.sn * w.sn - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(jacobi_sn_cn_dn(cplx(0.0, ctx.Kprime()), ctx), PoleError);
}

TEST_CASE("Jacobi zeta") {
  const EllipticContext ctx(0.5);
  CHECK(std::abs(jacobi_zeta(0.0, ctx)) < 1e-15);
  CHECK(std::abs(jacobi_zeta(ctx.K(), ctx)) < 1e-13);
  const double h = 1e-5;
  const double fd = (std::log(theta_real(ThetaKind::Theta, 0.5 + h, ctx)) -
                     std::log(theta_real(ThetaKind::Theta, 0.5 - h, ctx))) /
                    (2 * h);
  CHECK(std::abs(jacobi_zeta(0.5, ctx) - fd) < 1e-9);
}

TEST_CASE("theta product identity") {
  const EllipticContext ctx(0.5);
  const auto at = theta_product_identity_check(0.9, 0.9, ctx);
  CHECK(std::abs(at.lhs) < 1e-15);
  CHECK(std::abs(at.rhs) < 1e-15);
  const auto a = theta_product_identity_check(0.4, 0.9, ctx);
  const auto b = theta_product_identity_check(0.9, 0.4, ctx);
  CHECK(std::abs(a.lhs + b.lhs) < 1e-14);
  CHECK(std::abs(a.rhs + b.rhs) < 1e-14);

  // The measured constant: π²/(4 k k'² K²) = 1/(k Θ(0)⁴).
  const double expected = M_PI * M_PI / (4.0 * ctx.k() * ctx.kprime2() * ctx.K() * ctx.K());
  CHECK(std::abs(*a.ratio - expected) < 1e-10 * expected);
  CHECK(std::abs(expected - 2.0301601685722466) < 1e-12);
}

TEST_CASE("theta product ratio is z-independent, property") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uk(0.1, 0.9), uw(0.1, 0.9);
  for (int i = 0; i < 10; ++i) {
    const EllipticContext ctx(uk(rng));
    const double omega = uw(rng) * ctx.K();
    std::optional<double> ref;
    for (int j = 1; j < 20; ++j) {
      const double z = j * 0.1 * ctx.K();
      const auto c = theta_product_identity_check(z, omega, ctx);
      if (std::abs(c.rhs) < 1e-3) continue;
      if (!ref) ref = *c.ratio;
      CHECK(std::abs(*c.ratio / *ref - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("context restore rejects inconsistent records") {
  const EllipticContext ctx(0.3);
  const auto r = EllipticContext::restore(0.3, ctx.K(), ctx.Kprime(), ctx.E(), ctx.q());
  CHECK(r.K() == ctx.K());
  CHECK_THROWS_AS(EllipticContext::restore(0.3, ctx.K(), ctx.Kprime(), ctx.E(), ctx.q() * 1.01), DomainError);
}
