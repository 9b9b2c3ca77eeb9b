#include "heun/finite_gap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <json.hpp>
#include <utility>

#include "heun/errors.hpp"

namespace heun {

namespace {

struct RationalParams {
  Rational alpha, beta, gamma, delta, epsilon;
};

RationalParams rational_params(const MeromorphyVector& mv) {
  require_nonnegative(mv);
  const Rational half(1, 2);
  const int M = mv.M();
  RationalParams r;
  r.gamma = half - mv.m1;
  r.delta = half - mv.m2;
  r.epsilon = half - mv.m3;
  r.alpha = Rational(-(mv.m0 + M), 2);
  r.beta = Rational(mv.m0 - M + 1, 2);
  return r;
}

RatPoly poly(std::initializer_list<Rational> c) { return RatPoly(std::vector<Rational>(c)); }

// D = w(1−w)(1−k²w), A = pD, B = qD with q = (σ/4 + αβk²w)/D.
struct Ed3Coefficients {
  RatPoly D, A;
  BiPoly B;
};

Ed3Coefficients ed3_coefficients(const MeromorphyVector& mv, const Rational& k2) {
  const RationalParams r = rational_params(mv);
  const RatPoly w = poly({0, 1});
  const RatPoly one_w = poly({1, -1});
  const RatPoly one_kw = poly({1, -k2});
  Ed3Coefficients c;
  c.D = w * one_w * one_kw;
  c.A = one_w * one_kw * r.gamma - w * one_kw * r.delta - w * one_w * (r.epsilon * k2);
  c.B = BiPoly({poly({0, r.alpha * r.beta * k2}), poly({Rational(1, 4)})});
  return c;
}

BiPoly apply_ed3(const BiPoly& psi, const Ed3Coefficients& c) {
  const BiPoly D = BiPoly::from_w(c.D);
  const BiPoly A = BiPoly::from_w(c.A);
  const BiPoly dD = BiPoly::from_w(c.D.derivative());
  const BiPoly dA = BiPoly::from_w(c.A.derivative());
  const BiPoly dB = c.B.dw();
  const BiPoly p1 = psi.dw();
  const BiPoly p2 = p1.dw();
  const BiPoly p3 = p2.dw();
  const BiPoly c1 = dA * D - A * dD + A * A * Rational(2) + c.B * D * Rational(4);
  const BiPoly c0 = (dB * D - c.B * dD + A * c.B * Rational(2)) * Rational(2);
  return D * D * p3 + A * D * p2 * Rational(3) + c1 * p1 + c0 * psi;
}

void require_modulus(const Rational& k2) {
  if (!(k2 > 0 && k2 < 1)) throw DomainError("spectral_polynomial: k2 must lie in (0, 1)");
}

}  // namespace

double SchroedingerForm::potential(double z, const EllipticContext& ctx) const {
  const auto [sn, cn, dn] = jacobi_sn_cn_dn(z, ctx);
  const double k2 = ctx.k2();
  double v = c0 * k2 * sn * sn;
  if (c1 != 0.0) v += c1 / (sn * sn);
  if (c2 != 0.0) v += c2 * dn * dn / (cn * cn);
  if (c3 != 0.0) v += c3 * k2 * cn * cn / (dn * dn);
  return v;
}

SchroedingerForm schroedinger_form(const MeromorphyVector& mv, double k2, double s) {
  require_nonnegative(mv);
  auto tri = [](int m) { return static_cast<double>(m) * (m + 1); };
  const double a = mv.m1 + mv.m2;
  const double b = mv.m1 + mv.m3;
  return {mv, tri(mv.m0), tri(mv.m1), tri(mv.m2), tri(mv.m3), 4.0 * s + a * a + k2 * b * b};
}

RatPoly leading_b0(const MeromorphyVector& mv, const Rational& k2) {
  require_nonnegative(mv);
  RatPoly b = RatPoly::constant(1);
  for (int i = 0; i < mv.m1; ++i) b = b * poly({0, 1});
  for (int i = 0; i < mv.m2; ++i) b = b * poly({1, -1});
  for (int i = 0; i < mv.m3; ++i) b = b * poly({1, -k2});
  return b;
}

BiPoly ed3_remainder(const BiPoly& psi, const MeromorphyVector& mv, const Rational& k2) {
  return apply_ed3(psi, ed3_coefficients(mv, k2));
}

RatPoly nu_squared(const BiPoly& psi, const MeromorphyVector& mv, const Rational& k2) {
  const Ed3Coefficients c = ed3_coefficients(mv, k2);
  const BiPoly D = BiPoly::from_w(c.D);
  const BiPoly A = BiPoly::from_w(c.A);
  const BiPoly p1 = psi.dw();
  const BiPoly p2 = p1.dw();
  const BiPoly num = D * (psi * p2 * Rational(2) - p1 * p1) + A * psi * p1 * Rational(2) +
                     c.B * psi * psi * Rational(4);
  const RatPoly b0 = leading_b0(mv, k2);
  const RatPoly b02 = b0 * b0;
  std::vector<Rational> out;
  for (int j = 0; j <= num.sigma_degree(); ++j) {
    RatPoly q, r;
    num.part(j).divmod(b02, q, r);
    if (!r.is_zero()) throw ConsistencyError("nu_squared: nonzero remainder after division by b0^2");
    if (q.degree() > 0) throw ConsistencyError("nu_squared: result depends on w");
    out.push_back(q.coeff(0));
  }
  return RatPoly(std::move(out));
}

SpectralPolynomial spectral_polynomial(const MeromorphyVector& mv, const Rational& k2) {
  require_modulus(k2);
  require_nonnegative(mv);
  const Ed3Coefficients coef = ed3_coefficients(mv, k2);
  const int N = mv.N();
  const int nw = N + 1;
  for (int G = 0; G <= N + 2; ++G) {
    const int cols = nw * (G + 1);
    std::map<std::pair<int, int>, std::vector<Rational>> rows;
    for (int j = 0; j <= G; ++j) {
      for (int i = 0; i <= N; ++i) {
        std::vector<RatPoly> parts(static_cast<std::size_t>(j) + 1);
        parts[j] = RatPoly::monomial(1, i);
        const BiPoly image = apply_ed3(BiPoly(std::move(parts)), coef);
        const int col = j * nw + i;
        for (int b = 0; b <= image.sigma_degree(); ++b) {
          const auto& cs = image.part(b).coeffs();
          for (int a = 0; a < static_cast<int>(cs.size()); ++a) {
            if (cs[a] == 0) continue;
            auto& row = rows[{a, b}];
            if (row.empty()) row.resize(static_cast<std::size_t>(cols));
            row[col] = cs[a];
          }
        }
      }
    }
    std::vector<std::vector<Rational>> matrix;
    matrix.reserve(rows.size());
    for (auto& [key, row] : rows) matrix.push_back(std::move(row));
    const auto basis = rational_nullspace(std::move(matrix), cols);
    if (basis.empty()) continue;
    if (basis.size() != 1) {
      throw ConsistencyError("spectral_polynomial: nullspace of dimension " + std::to_string(basis.size()) +
                             " at sigma-degree " + std::to_string(G) + " for mv " + format_meromorphy(mv));
    }
    std::vector<RatPoly> parts;
    for (int j = 0; j <= G; ++j) {
      parts.emplace_back(std::vector<Rational>(basis[0].begin() + j * nw, basis[0].begin() + (j + 1) * nw));
    }
    BiPoly psi(std::move(parts));
    SpectralPolynomial sp;
    sp.mv = mv;
    sp.k2 = k2;
    sp.g = psi.sigma_degree();
    sp.escalations = G;
    const RatPoly b0 = leading_b0(mv, k2);
    const RatPoly& lead = psi.part(sp.g);
    if (lead.degree() != b0.degree()) {
      throw ConsistencyError("spectral_polynomial: sigma-leading coefficient is not proportional to b0");
    }
    const Rational scale = b0.coeffs().back() / lead.coeffs().back();
    sp.psi = psi * scale;
    if (!(sp.psi.part(sp.g) == b0)) {
      throw ConsistencyError("spectral_polynomial: sigma-leading coefficient is not proportional to b0");
    }
    sp.nu2 = nu_squared(sp.psi, mv, k2);
    if (sp.nu2.degree() != 2 * sp.g + 1) {
      throw ConsistencyError("spectral_polynomial: nu^2 has degree " + std::to_string(sp.nu2.degree()) +
                             ", expected " + std::to_string(2 * sp.g + 1));
    }
    return sp;
  }
  throw ConsistencyError("spectral_polynomial: no solution up to sigma-degree N+2 for mv " +
                         format_meromorphy(mv));
}

std::string SpectralPolynomial::to_json() const {
  nlohmann::ordered_json j;
  j["mv"] = {mv.m0, mv.m1, mv.m2, mv.m3};
  j["k2"] = format_rational(k2);
  j["g"] = g;
  j["N"] = mv.N();
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (int b = 0; b <= psi.sigma_degree(); ++b) {
    const auto& cs = psi.part(b).coeffs();
    for (int a = 0; a < static_cast<int>(cs.size()); ++a) {
      if (cs[a] != 0) coeffs.push_back({a, b, format_rational(cs[a])});
    }
  }
  j["coeffs"] = std::move(coeffs);
  nlohmann::ordered_json nu = nlohmann::ordered_json::array();
  for (const auto& c : nu2.coeffs()) nu.push_back(format_rational(c));
  j["nu2"] = std::move(nu);
  return j.dump();
}

SpectralPolynomial SpectralPolynomial::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    SpectralPolynomial sp;
    const auto mv = j.at("mv").get<std::vector<int>>();
    if (mv.size() != 4) throw DomainError("spectral JSON: mv must have four entries");
    sp.mv = {mv[0], mv[1], mv[2], mv[3]};
    sp.k2 = parse_rational(j.at("k2").get<std::string>());
    sp.g = j.at("g").get<int>();
    std::vector<RatPoly> parts(static_cast<std::size_t>(sp.g) + 1);
    for (const auto& e : j.at("coeffs")) {
      const int a = e.at(0).get<int>();
      const int b = e.at(1).get<int>();
      if (a < 0 || b < 0 || b > sp.g) throw DomainError("spectral JSON: coefficient index out of range");
      parts[b] = parts[b] + RatPoly::monomial(parse_rational(e.at(2).get<std::string>()), a);
    }
    sp.psi = BiPoly(std::move(parts));
    std::vector<Rational> nu;
    if (j.contains("nu2")) {
      for (const auto& e : j.at("nu2")) nu.push_back(parse_rational(e.get<std::string>()));
    }
    sp.nu2 = RatPoly(std::move(nu));
    return sp;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("spectral JSON: ") + e.what());
  }
}

// FiniteGapSolution

FiniteGapSolution::FiniteGapSolution(const SpectralPolynomial& sp, double sigma, int branch, double w0,
                                     int n_quad)
    : mv_(sp.mv), k2_(to_double(sp.k2)), sigma_(sigma), branch_(branch), w0_(w0), n_quad_(n_quad),
      endpoint_rule_(gauss_jacobi_rule(-0.5, 0.0, n_quad)), plain_rule_(gauss_jacobi_rule(0.0, 0.0, n_quad)) {
  if (branch != 1 && branch != -1) throw DomainError("finite_gap: branch must be +1 or -1");
  if (!(w0 >= 0.0 && w0 < 1.0)) throw DomainError("finite_gap: w0 must lie in [0, 1)");
  const int nw = sp.psi.w_degree() + 1;
  psi_coeffs_.assign(static_cast<std::size_t>(std::max(nw, 1)), 0.0);
  for (int i = 0; i < nw; ++i) {
    double v = 0.0;
    for (int j = sp.psi.sigma_degree(); j >= 0; --j) v = v * sigma + to_double(sp.psi.coeff(i, j));
    psi_coeffs_[i] = v;
  }
  nu2_ = sp.nu2.eval(sigma);
  nu_ = std::sqrt(cplx(nu2_));
}

Jet FiniteGapSolution::psi(double w) const {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
  for (std::size_t k = psi_coeffs_.size(); k-- > 0;) {
    d2 = d2 * w + 2.0 * d1;
    d1 = d1 * w + v;
    v = v * w + psi_coeffs_[k];
  }
  return {v, d1, d2};
}

double FiniteGapSolution::b0(double u) const {
  return std::pow(u, mv_.m1) * std::pow(1.0 - u, mv_.m2) * std::pow(1.0 - k2_ * u, mv_.m3);
}

double FiniteGapSolution::integrand(double u) const {
  return b0(u) / std::sqrt(u * (1.0 - u) * (1.0 - k2_ * u)) / psi(u).value;
}

bool FiniteGapSolution::psi_vanishes_on(double lo, double hi) const {
  constexpr int kSamples = 512;
  double scale = 0.0;
  for (double c : psi_coeffs_) scale += std::abs(c);
  const double floor = 1e-13 * std::max(scale, 1e-300);
  double prev = psi(lo).value;
  if (std::abs(prev) <= floor) return true;
  for (int i = 1; i <= kSamples; ++i) {
    const double x = lo + (hi - lo) * i / kSamples;
    const double v = psi(x).value;
    if (std::abs(v) <= floor || (v > 0.0) != (prev > 0.0)) return true;
    prev = v;
  }
  return false;
}

double FiniteGapSolution::integral_from_zero(double x) const {
  if (x == 0.0) return 0.0;
  // u = x t absorbs the u^{-1/2} endpoint behaviour into the rule's weight.
  const double v = endpoint_rule_.integrate([&](double t) {
    const double u = x * t;
    return std::sqrt(u) * integrand(u);
  });
  return std::sqrt(x) * v;
}

double FiniteGapSolution::integral_direct(double lo, double hi) const {
  return (hi - lo) * plain_rule_.integrate([&](double t) { return integrand(lo + (hi - lo) * t); });
}

double FiniteGapSolution::phase_integral(double w) const {
  const double lo = std::min(w, w0_);
  const double hi = std::max(w, w0_);
  if (psi_vanishes_on(lo, hi)) throw TurningPointError("finite_gap: Psi vanishes between w0 and w");
  if (!psi_vanishes_on(0.0, hi)) return integral_from_zero(w) - integral_from_zero(w0_);
  if (lo <= 0.0) throw TurningPointError("finite_gap: Psi vanishes at the base point");
  return w >= w0_ ? integral_direct(lo, hi) : -integral_direct(lo, hi);
}

FiniteGapValue FiniteGapSolution::eval(double w) const {
  if (!(w > 0.0 && w < 1.0)) throw DomainError("finite_gap: w must lie in (0, 1)");
  const double J = phase_integral(w);
  const Jet P = psi(w);
  const cplx c = cplx(0.0, 0.5 * branch_) * nu_;
  const cplx value = std::sqrt(cplx(P.value)) * std::exp(c * J);
  const double nf = b0(w) / std::sqrt(w * (1.0 - w) * (1.0 - k2_ * w));
  const double dlog_nf = (mv_.m1 - 0.5) / w - (mv_.m2 - 0.5) / (1.0 - w) -
                         (mv_.m3 - 0.5) * k2_ / (1.0 - k2_ * w);
  const double nf1 = nf * dlog_nf;
  const cplx L = P.d1 / (2.0 * P.value) + c * nf / P.value;
  const cplx L1 = (P.d2 * P.value - P.d1 * P.d1) / (2.0 * P.value * P.value) +
                  c * (nf1 * P.value - nf * P.d1) / (P.value * P.value);
  return {value, value * L, value * (L1 + L * L)};
}

cplx finite_gap_eval(const SpectralPolynomial& sp, double sigma, double w, int branch, double w0) {
  return FiniteGapSolution(sp, sigma, branch, w0).eval(w).value;
}

ThirdKindCheck third_kind_integral_check(double omega, const EllipticContext& ctx, double z) {
  const auto [sw, cw, dw] = jacobi_sn_cn_dn(omega, ctx);
  const double k2 = ctx.k2();
  const double amp = k2 * sw * cw * dw;
  auto f = [&](double u) {
    const double su = jacobi_sn_cn_dn(u, ctx).sn;
    const double den = 1.0 - k2 * sw * sw * su * su;
    if (std::abs(den) < kPoleTol) throw PoleError("third_kind_integral_check: pole on the path");
    return amp * su * su / den;
  };
  ThirdKindCheck out;
  out.integral_side = z == 0.0 ? 0.0 : adaptive_integrate(f, 0.0, z, 1e-14);
  out.theta_side = 0.5 * std::log(theta_real(ThetaKind::Theta, z - omega, ctx) /
                                  theta_real(ThetaKind::Theta, z + omega, ctx)) +
                   z * jacobi_zeta(omega, ctx);
  return out;
}

}  // namespace heun
