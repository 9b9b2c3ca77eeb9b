#include "heun/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "heun/errors.hpp"
#include "heun/simd.hpp"

namespace heun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxThetaTerms = 400;

// Bulirsch's table for sncndn; the AGM of (1, k') sits in `mean`.
AgmTable build_agm(double k2) {
  AgmTable t;
  t.k2 = k2;
  const double tol = std::sqrt(std::numeric_limits<double>::epsilon() * 0.01);
  double mc = 1.0 - k2;
  double a = 1.0;
  double c = 1.0;
  for (int l = 0; l < 16; ++l) {
    t.a.push_back(a);
    mc = std::sqrt(mc);
    t.b.push_back(mc);
    c = (a + mc) / 2;
    if (!(std::abs(a - mc) > tol * a)) break;
    mc *= a;
    a = c;
  }
  t.mean = c;
  return t;
}

JacobiTriple<double> sncndn(double x, const AgmTable& t) {
  if (t.k2 == 0.0) return {std::sin(x), std::cos(x), 1.0};
  double c = t.mean;
  x *= c;
  double sn = std::sin(x);
  double cn = std::cos(x);
  double dn = 1.0;
  if (sn != 0.0) {
    double a = cn / sn;
    c *= a;
    for (std::size_t l = t.a.size(); l-- > 0;) {
      const double b = t.a[l];
      a *= c;
      c *= dn;
      dn = (t.b[l] + a) / (b + a);
      a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    sn = sn < 0 ? -a : a;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite argument");
}

// Layout of one theta q-series: coefficients c_n of f(m_n v), m_n = first + n·step.
struct ThetaLayout {
  int first;
  int step;
  bool sine;
};

ThetaLayout layout(ThetaKind which) {
  switch (which) {
    case ThetaKind::H:
      return {1, 2, true};
    case ThetaKind::H1:
      return {1, 2, false};
    case ThetaKind::Theta:
    case ThetaKind::Theta1:
      return {0, 2, false};
  }
  return {0, 2, false};
}

double base_coefficient(ThetaKind which, int n, double log_q) {
  const double alt = (n % 2 == 0) ? 1.0 : -1.0;
  switch (which) {
    case ThetaKind::H:
      return 2.0 * alt * std::exp(log_q * (n + 0.5) * (n + 0.5));
    case ThetaKind::H1:
      return 2.0 * std::exp(log_q * (n + 0.5) * (n + 0.5));
    case ThetaKind::Theta:
      return n == 0 ? 1.0 : 2.0 * alt * std::exp(log_q * n * n);
    case ThetaKind::Theta1:
      return n == 0 ? 1.0 : 2.0 * std::exp(log_q * n * n);
  }
  return 0.0;
}

// d^k/dx^k of sin (or cos) is ±sin or ±cos; returns (use_sin, sign).
std::pair<bool, double> differentiated_trig(bool sine, int k) {
  const int r = k % 4;
  if (sine) {
    switch (r) {
      case 0: return {true, 1.0};
      case 1: return {false, 1.0};
      case 2: return {true, -1.0};
      default: return {false, -1.0};
    }
  }
  switch (r) {
    case 0: return {false, 1.0};
    case 1: return {true, -1.0};
    case 2: return {false, -1.0};
    default: return {true, 1.0};
  }
}

}  // namespace

double carlson_rf(double x, double y, double z) {
  if (x < 0 || y < 0 || z < 0) throw DomainError("carlson_rf: negative argument");
  if ((x == 0) + (y == 0) + (z == 0) > 1) throw DomainError("carlson_rf: two zero arguments");
  constexpr double kErrTol = 0.001;
  double xt = x, yt = y, zt = z;
  double ave = 0, dx = 0, dy = 0, dz = 0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lambda = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lambda);
    yt = 0.25 * (yt + lambda);
    zt = 0.25 * (zt + lambda);
    ave = (xt + yt + zt) / 3.0;
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kErrTol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(ave);
}

double complete_elliptic_K(double k2) {
  if (!(k2 >= 0.0) || !(k2 < 1.0)) throw DomainError("complete_elliptic_K: k2 must lie in [0, 1)");
  double a = 1.0;
  double b = std::sqrt(1.0 - k2);
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (a + b);
}

double complete_elliptic_E(double k2) {
  if (!(k2 >= 0.0) || !(k2 <= 1.0)) throw DomainError("complete_elliptic_E: k2 must lie in [0, 1]");
  if (k2 == 1.0) return 1.0;
  // E = K (1 − Σ 2^{n−1} c_n²), c_0 = k, with c_{n+1} = c_n²/(4 a_{n+1})
  // instead of (a_n − b_n)/2, which cancels.
  double a = 1.0;
  double b = std::sqrt(1.0 - k2);
  double c = std::sqrt(k2);
  double sum = 0.5 * k2;
  double pow2 = 0.5;
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    c = c * c / (4.0 * a);
    pow2 *= 2.0;
    const double term = pow2 * c * c;
    sum += term;
    if (term <= 1e-18 * sum) break;
  }
  const double K = kPi / (2.0 * a);
  return K * (1.0 - sum);
}

EllipticContext::EllipticContext(double k2) {
  if (!(k2 > 0.0) || !(k2 < 1.0)) throw DomainError("make_context: k2 must lie in (0, 1)");
  k2_ = k2;
  kprime2_ = 1.0 - k2;
  K_ = complete_elliptic_K(k2_);
  Kprime_ = complete_elliptic_K(kprime2_);
  E_ = complete_elliptic_E(k2_);
  q_ = std::exp(-kPi * Kprime_ / K_);
  agm_ = build_agm(k2_);
  agm_dual_ = build_agm(kprime2_);
}

EllipticContext EllipticContext::restore(double k2, double K, double Kprime, double E, double q) {
  if (!(k2 > 0.0) || !(k2 < 1.0)) throw DomainError("context record: k2 must lie in (0, 1)");
  if (!(K > 0) || !(Kprime > 0) || !(E > 0) || !(q > 0 && q < 1)) {
    throw DomainError("context record: non-positive cached value");
  }
  if (std::abs(q - std::exp(-kPi * Kprime / K)) > 1e-14) {
    throw DomainError("context record: nome inconsistent with K, K'");
  }
  EllipticContext ctx;
  ctx.k2_ = k2;
  ctx.kprime2_ = 1.0 - k2;
  ctx.K_ = K;
  ctx.Kprime_ = Kprime;
  ctx.E_ = E;
  ctx.q_ = q;
  ctx.agm_ = build_agm(k2);
  ctx.agm_dual_ = build_agm(ctx.kprime2_);
  return ctx;
}

double EllipticContext::k() const { return std::sqrt(k2_); }
double EllipticContext::kprime() const { return std::sqrt(kprime2_); }
double EllipticContext::Eprime() const { return complete_elliptic_E(kprime2_); }

double EllipticContext::legendre_residual() const {
  const double lhs = E_ * Kprime_ + Eprime() * K_ - K_ * Kprime_;
  return (lhs - kPi / 2) / (kPi / 2);
}

EllipticContext make_context(double k2) { return EllipticContext(k2); }

ThetaValue theta(ThetaKind which, cplx z, const EllipticContext& ctx, int derivative, double tol) {
  require_finite(z.real(), "theta");
  require_finite(z.imag(), "theta");
  if (derivative < 0 || derivative > 3) throw DomainError("theta: derivative order must be 0..3");
  if (!(tol > 0)) throw DomainError("theta: tol must be positive");
  if (std::abs(z.imag()) >= ctx.Kprime()) {
    throw DomainError("theta: |Im z| must be below K'");
  }
  const ThetaLayout lay = layout(which);
  const auto [use_sin, sign] = differentiated_trig(lay.sine, derivative);
  const double scale = kPi / (2.0 * ctx.K());
  const cplx v = scale * z;
  const double log_q = std::log(ctx.q());
  cplx sum = 0.0;
  int used = 0;
  for (int n = 0; n < kMaxThetaTerms; ++n) {
    const double m = lay.first + n * lay.step;
    const double c = base_coefficient(which, n, log_q) * std::pow(m * scale, derivative) * sign;
    const double bound = std::abs(c) * std::exp(m * std::abs(v.imag()));
    if (n > 0 && bound < tol * (1.0 + std::abs(sum))) {
      return {which, z, sum, used};
    }
    const cplx arg = m * v;
    sum += c * (use_sin ? std::sin(arg) : std::cos(arg));
    ++used;
  }
  throw ConvergenceError("theta: q-series did not converge");
}

double theta_real(ThetaKind which, double z, const EllipticContext& ctx, int derivative,
                  double tol) {
  return theta(which, cplx(z, 0.0), ctx, derivative, tol).value.real();
}

void theta_grid(ThetaKind which, std::span<const double> z, const EllipticContext& ctx,
                std::span<double> out, int derivative) {
  if (z.size() != out.size()) throw DomainError("theta_grid: size mismatch");
  if (derivative < 0 || derivative > 3) throw DomainError("theta: derivative order must be 0..3");
  for (double v : z) require_finite(v, "theta_grid");
  const ThetaLayout lay = layout(which);
  const auto [use_sin, sign] = differentiated_trig(lay.sine, derivative);
  const double scale = kPi / (2.0 * ctx.K());
  const double log_q = std::log(ctx.q());
  std::vector<double> coef;
  for (int n = 0; n < kMaxThetaTerms; ++n) {
    const double m = lay.first + n * lay.step;
    const double c = base_coefficient(which, n, log_q) * std::pow(m * scale, derivative) * sign;
    if (n > 0 && std::abs(c) < kThetaTol) break;
    coef.push_back(c);
  }
  simd::trig_series(coef, lay.first, lay.step, use_sin, scale, z, out);
}

LogDerivatives theta_log_derivatives(ThetaKind which, double z, const EllipticContext& ctx) {
  const double f0 = theta_real(which, z, ctx, 0);
  if (std::abs(f0) < kPoleTol) throw PoleError("theta_log_derivatives: theta vanishes at z");
  const double g1 = theta_real(which, z, ctx, 1) / f0;
  const double g2 = theta_real(which, z, ctx, 2) / f0;
  const double g3 = theta_real(which, z, ctx, 3) / f0;
  return {g1, g2 - g1 * g1, g3 - 3.0 * g2 * g1 + 2.0 * g1 * g1 * g1};
}

JacobiTriple<double> jacobi_sn_cn_dn(double u, const EllipticContext& ctx) {
  require_finite(u, "jacobi_sn_cn_dn");
  // sn, cn have period 4K; reduce first so the Landen sine stays accurate.
  const double r = std::remainder(u, 4.0 * ctx.K());
  return sncndn(r, ctx.agm());
}

JacobiTriple<cplx> jacobi_sn_cn_dn(cplx z, const EllipticContext& ctx) {
  const double x = z.real();
  const double y = z.imag();
  require_finite(x, "jacobi_sn_cn_dn");
  require_finite(y, "jacobi_sn_cn_dn");
  const double Kp = ctx.Kprime();
  if (std::abs(std::remainder(y - Kp, 2.0 * Kp)) < kPoleTol &&
      std::abs(std::remainder(x, 2.0 * ctx.K())) < kPoleTol) {
    throw PoleError("jacobi_sn_cn_dn: argument at a pole (≡ iK')");
  }
  const auto [s, c, d] = jacobi_sn_cn_dn(x, ctx);
  if (y == 0.0) return {s, c, d};
  const auto [s1, c1, d1] = sncndn(std::remainder(y, 4.0 * Kp), ctx.agm_dual());
  const double k2 = ctx.k2();
  const double den = c1 * c1 + k2 * s * s * s1 * s1;
  return {cplx(s * d1, c * d * s1 * c1) / den, cplx(c * c1, -s * d * s1 * d1) / den,
          cplx(d * c1 * d1, -k2 * s * c * s1) / den};
}

double jacobi_zeta(double z, const EllipticContext& ctx) {
  require_finite(z, "jacobi_zeta");
  const double t = theta_real(ThetaKind::Theta, z, ctx, 0);
  if (std::abs(t) < kPoleTol) throw PoleError("jacobi_zeta: Θ vanishes");
  return theta_real(ThetaKind::Theta, z, ctx, 1) / t;
}

double inverse_sn(double x, const EllipticContext& ctx) {
  if (!(x >= 0.0) || !(x <= 1.0)) throw DomainError("inverse_sn: x must lie in [0, 1]");
  if (x == 1.0) return ctx.K();
  return x * carlson_rf(1.0 - x * x, 1.0 - ctx.k2() * x * x, 1.0);
}

ThetaProductCheck theta_product_identity_check(double z, double omega, const EllipticContext& ctx) {
  using enum ThetaKind;
  const double tz = theta_real(Theta, z, ctx);
  const double tw = theta_real(Theta, omega, ctx);
  const double t0 = theta_real(Theta, 0.0, ctx);
  const double lhs = theta_real(H, z - omega, ctx) * theta_real(H, z + omega, ctx) /
                     (tz * tz * tw * tw * t0 * t0);
  const double snz = jacobi_sn_cn_dn(z, ctx).sn;
  const double snw = jacobi_sn_cn_dn(omega, ctx).sn;
  const double rhs = ctx.k2() * snz * snz - ctx.k2() * snw * snw;
  ThetaProductCheck out{lhs, rhs, std::nullopt};
  if (rhs != 0.0) out.ratio = lhs / rhs;
  return out;
}

}  // namespace heun
