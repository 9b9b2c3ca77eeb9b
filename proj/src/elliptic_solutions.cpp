#include "heun/elliptic_solutions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "heun/errors.hpp"

namespace heun {

namespace {

constexpr double kIndependenceTol = 1e-8;
constexpr double kConstraintSlack = 1e-14;

ThetaKind numerator_kind(LevelOneFamily f) {
  switch (f) {
    case LevelOneFamily::M0:
      return ThetaKind::H;
    case LevelOneFamily::M1:
      return ThetaKind::Theta;
    case LevelOneFamily::M2:
      return ThetaKind::Theta1;
    case LevelOneFamily::M3:
      return ThetaKind::H1;
  }
  return ThetaKind::Theta;
}

double theta_d(ThetaKind which, double z, const EllipticContext& ctx, int d) {
  return theta_real(which, z, ctx, d);
}

constexpr std::array<std::pair<LevelOneFamily, std::string_view>, 4> kFamilyNames{{
    {LevelOneFamily::M0, "m0"},
    {LevelOneFamily::M1, "m1"},
    {LevelOneFamily::M2, "m2"},
    {LevelOneFamily::M3, "m3"},
}};

}  // namespace

double z_of_w(double w, const EllipticContext& ctx) {
  if (!(w >= 0.0 && w <= 1.0)) throw DomainError("z_of_w: w must lie in [0, 1]");
  return inverse_sn(std::sqrt(w), ctx);
}

HeunParams carlitz_params(double k2, cplx s) { return {k2, s, 0.0, 0.5, 0.5, 0.5}; }

CarlitzPair carlitz_pair(const EllipticContext& ctx, cplx s, double w) {
  CarlitzPair out;
  out.z = z_of_w(w, ctx);
  const cplx c = cplx(0.0, 2.0) * std::sqrt(s);
  out.y_plus = std::exp(c * out.z);
  out.y_minus = std::exp(-c * out.z);
  if (w > 0.0 && w < 1.0) {
    const double k2 = ctx.k2();
    const double P = w * (1.0 - w) * (1.0 - k2 * w);
    const double dP = (1.0 - w) * (1.0 - k2 * w) - w * (1.0 - k2 * w) - k2 * w * (1.0 - w);
    const double z1 = 0.5 / std::sqrt(P);
    const double z2 = -0.25 * dP / (P * std::sqrt(P));
    out.d1_plus = c * z1 * out.y_plus;
    out.d1_minus = -c * z1 * out.y_minus;
    out.d2_plus = (c * c * z1 * z1 + c * z2) * out.y_plus;
    out.d2_minus = (c * c * z1 * z1 - c * z2) * out.y_minus;
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.d1_plus = out.d1_minus = out.d2_plus = out.d2_minus = cplx(nan, nan);
  }
  return out;
}

ZFormCoefficients z_form_coefficients(const HeunParams& p, cplx z, const EllipticContext& ctx) {
  const JacobiTriple<cplx> j = z.imag() == 0.0
                                   ? [&] {
                                       const auto r = jacobi_sn_cn_dn(z.real(), ctx);
                                       return JacobiTriple<cplx>{r.sn, r.cn, r.dn};
                                     }()
                                   : jacobi_sn_cn_dn(z, ctx);
  const cplx a1 = 2.0 * p.gamma - 1.0;
  const cplx a2 = -(2.0 * p.delta - 1.0);
  const cplx a3 = -(2.0 * p.epsilon() - 1.0) * p.k2;
  auto pole = [](cplx factor, cplx denom) { return factor != cplx(0.0) && std::abs(denom) < kPoleTol; };
  if (pole(a1, j.sn) || pole(a2, j.cn) || pole(a3, j.dn)) {
    throw PoleError("z_form_coefficients: z at a zero of sn, cn or dn");
  }
  ZFormCoefficients out;
  out.first_order = 0.0;
  if (a1 != cplx(0.0)) out.first_order += a1 * j.cn * j.dn / j.sn;
  if (a2 != cplx(0.0)) out.first_order += a2 * j.sn * j.dn / j.cn;
  if (a3 != cplx(0.0)) out.first_order += a3 * j.sn * j.cn / j.dn;
  out.zero_order = 4.0 * (p.s + p.alpha * p.beta * p.k2 * j.sn * j.sn);
  return out;
}

double z_form_residual(const ZFormCoefficients& c, cplx y, cplx d1, cplx d2) {
  const double scale = std::abs(d2) + std::abs(c.first_order * d1) + std::abs(c.zero_order * y);
  if (scale == 0.0) return 0.0;
  return std::abs(d2 + c.first_order * d1 + c.zero_order * y) / scale;
}

std::string_view family_name(LevelOneFamily f) {
  for (const auto& [k, n] : kFamilyNames) {
    if (k == f) return n;
  }
  return "?";
}

std::optional<LevelOneFamily> parse_family(std::string_view name) {
  for (const auto& [k, n] : kFamilyNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

MeromorphyVector family_vector(LevelOneFamily f) {
  switch (f) {
    case LevelOneFamily::M0:
      return {1, 0, 0, 0};
    case LevelOneFamily::M1:
      return {0, 1, 0, 0};
    case LevelOneFamily::M2:
      return {0, 0, 1, 0};
    case LevelOneFamily::M3:
      return {0, 0, 0, 1};
  }
  return {};
}

double family_constraint(LevelOneFamily f, double sigma, double k2) {
  switch (f) {
    case LevelOneFamily::M0:
      return sigma - k2;
    case LevelOneFamily::M1:
      return sigma + 1.0;
    case LevelOneFamily::M2:
      return sigma + 1.0 - k2;
    case LevelOneFamily::M3:
      return sigma;
  }
  return 0.0;
}

double solve_omega(LevelOneFamily f, double sigma, const EllipticContext& ctx) {
  const double t = family_constraint(f, sigma, ctx.k2());
  if (!(t >= ctx.kprime2() - kConstraintSlack && t <= 1.0 + kConstraintSlack)) {
    throw DomainError("solve_omega: dn^2(omega) outside [k'^2, 1] needs complex omega");
  }
  const double x = std::sqrt(std::clamp((1.0 - t) / ctx.k2(), 0.0, 1.0));
  return inverse_sn(x, ctx);
}

LevelOneSolution::LevelOneSolution(LevelOneFamily family, double sigma, const EllipticContext& ctx)
    : family_(family), sigma_(sigma), omega_(solve_omega(family, sigma, ctx)),
      multiplier_(jacobi_zeta(omega_, ctx)), ctx_(ctx) {
  const double z0 = 0.37 * ctx_.K();
  const Jet a = eval(z0, 1);
  const Jet b = eval(z0, -1);
  const double scale = std::abs(a.value * b.d1) + std::abs(a.d1 * b.value);
  degenerate_ = scale == 0.0 || std::abs(a.value * b.d1 - a.d1 * b.value) < kIndependenceTol * scale;
}

Jet LevelOneSolution::eval_plus(double z) const {
  const ThetaKind kind = numerator_kind(family_);
  const double n0 = theta_d(kind, z - omega_, ctx_, 0);
  const double n1 = theta_d(kind, z - omega_, ctx_, 1);
  const double n2 = theta_d(kind, z - omega_, ctx_, 2);
  const double d0 = theta_d(ThetaKind::Theta, z, ctx_, 0);
  const double d1 = theta_d(ThetaKind::Theta, z, ctx_, 1);
  const double d2 = theta_d(ThetaKind::Theta, z, ctx_, 2);
  const double f = n0 / d0;
  const double f1 = (n1 * d0 - n0 * d1) / (d0 * d0);
  const double f2 = (n2 * d0 - n0 * d2) / (d0 * d0) - 2.0 * d1 * (n1 * d0 - n0 * d1) / (d0 * d0 * d0);
  const double Z = multiplier_;
  const double e = std::exp(z * Z);
  return {e * f, e * (Z * f + f1), e * (Z * Z * f + 2.0 * Z * f1 + f2)};
}

Jet LevelOneSolution::eval(double z, int sign) const {
  if (sign >= 0) return eval_plus(z);
  const Jet j = eval_plus(-z);
  return {j.value, -j.d1, j.d2};
}

HeunParams LevelOneSolution::params() const {
  return params_from_meromorphy(family_vector(family_), ctx_.k2(), sigma_ / 4.0);
}

double LevelOneSolution::residual(double z, int sign) const {
  const Jet j = eval(z, sign);
  return z_form_residual(z_form_coefficients(params(), z, ctx_), j.value, j.d1, j.d2);
}

double level_one_eval(LevelOneFamily f, double sigma, const EllipticContext& ctx, double z) {
  return LevelOneSolution(f, sigma, ctx).value(z);
}

double level_one_psi(LevelOneFamily f, double sigma, double k2, double w) {
  switch (f) {
    case LevelOneFamily::M0:
      return sigma + k2 * w - 1.0 - k2;
    case LevelOneFamily::M1:
      return sigma * w + 1.0;
    case LevelOneFamily::M2:
      return sigma * (1.0 - w) + 1.0 - k2;
    case LevelOneFamily::M3:
      return sigma * (1.0 - k2 * w) - 1.0 + k2;
  }
  return 0.0;
}

double degenerate_sigma_value(DegenerateSigma which, double k2) {
  switch (which) {
    case DegenerateSigma::OnePlusK2:
      return 1.0 + k2;
    case DegenerateSigma::One:
      return 1.0;
    case DegenerateSigma::K2:
      return k2;
  }
  return 0.0;
}

Jet degenerate_second_solution(DegenerateSigma which, const EllipticContext& ctx, double z, double A,
                               double B) {
  const double k2 = ctx.k2();
  const double K = ctx.K();
  const double E = ctx.E();
  const auto [sn, cn, dn] = jacobi_sn_cn_dn(z, ctx);
  ThetaKind kind;
  double c, f, f1, f2;
  switch (which) {
    case DegenerateSigma::OnePlusK2:
      kind = ThetaKind::H;
      c = (E - K) / K;
      f = sn;
      f1 = cn * dn;
      f2 = -sn * dn * dn - k2 * sn * cn * cn;
      break;
    case DegenerateSigma::One:
      kind = ThetaKind::H1;
      c = (E - ctx.kprime2() * K) / K;
      f = cn;
      f1 = -sn * dn;
      f2 = -cn * dn * dn + k2 * sn * sn * cn;
      break;
    default:
      kind = ThetaKind::Theta1;
      c = E / K;
      f = dn;
      f1 = -k2 * sn * cn;
      f2 = -k2 * dn * (cn * cn - sn * sn);
      break;
  }
  double g = 0.0, g1 = 0.0, g2 = 0.0;
  if (B != 0.0) {
    const LogDerivatives L = theta_log_derivatives(kind, z, ctx);
    g = L.d1 + c * z;
    g1 = L.d2 + c;
    g2 = L.d3;
  }
  const double h = A + B * g;
  return {f * h, f1 * h + f * B * g1, f2 * h + 2.0 * f1 * B * g1 + f * B * g2};
}

}  // namespace heun
