#pragma once

// Finite-gap machinery for meromorphic Heun parameters: the spectral
// polynomial Ψ(σ; w), a polynomial product of two solutions solving
//
//   Ψ''' + 3pΨ'' + (p' + 2p² + 4q)Ψ' + 2(q' + 2pq)Ψ = 0,
//
// the constant ν²(σ) = (2ΨΨ'' − Ψ'² + 2pΨΨ' + 4qΨ²)/N², and the integral
// representation √Ψ·exp(±(iν/2)∫ N/Ψ dw), N = b₀(w)/√(w(1−w)(1−k²w)),
// b₀ = w^{m₁}(1−w)^{m₂}(1−k²w)^{m₃}.

#include <string>
#include <vector>

#include "heun/elliptic.hpp"
#include "heun/elliptic_solutions.hpp"
#include "heun/meromorphy.hpp"
#include "heun/quadrature.hpp"
#include "heun/rational.hpp"

namespace heun {

/// Potential V(z) = Σ c_i(...) of the derivative-free form Y'' = (V − A)Y,
/// reached by y = sn^{m₁} cn^{m₂} dn^{m₃} Y.
struct SchroedingerForm {
  MeromorphyVector mv;
  double c0;  // m₀(m₀+1), multiplies k² sn²z
  double c1;  // m₁(m₁+1), multiplies 1/sn²z
  double c2;  // m₂(m₂+1), multiplies dn²z/cn²z
  double c3;  // m₃(m₃+1), multiplies k² cn²z/dn²z
  /// A = 4s + (m₁+m₂)² + k²(m₁+m₃)².
  double A;

  double potential(double z, const EllipticContext& ctx) const;
};
SchroedingerForm schroedinger_form(const MeromorphyVector& mv, double k2, double s);

struct SpectralPolynomial {
  MeromorphyVector mv;
  Rational k2;
  int g = 0;
  BiPoly psi;          // coefficient of w^i σ^j
  RatPoly nu2;         // ν²(σ), filled by nu_squared
  int escalations = 0; // σ-degrees tried before a nullspace appeared

  double eval(double sigma, double w) const { return psi.eval(w, sigma); }
  /// JSON {mv, k2, g, N, coeffs: [[i, j, "p/q"], ...], nu2: ["p/q", ...]}.
  std::string to_json() const;
  static SpectralPolynomial from_json(const std::string& text);
};

/// b₀(w) over the rationals.
RatPoly leading_b0(const MeromorphyVector& mv, const Rational& k2);

/// Ψ with its σ-leading coefficient normalized to b₀(w), g discovered by
/// escalating the σ-degree of the ansatz from 0 to N+2. ν² is computed too.
/// Throws ConsistencyError when the nullspace has dimension ≠ 1 or the
/// normalization fails, and DomainError for k² ∉ (0, 1) or negative m.
SpectralPolynomial spectral_polynomial(const MeromorphyVector& mv, const Rational& k2);

/// The cleared third-order operator applied to a candidate Ψ; zero for a
/// valid spectral polynomial.
BiPoly ed3_remainder(const BiPoly& psi, const MeromorphyVector& mv, const Rational& k2);

/// ν²(σ) by exact division by b₀²; throws ConsistencyError on a nonzero
/// remainder or any leftover w-dependence.
RatPoly nu_squared(const BiPoly& psi, const MeromorphyVector& mv, const Rational& k2);

/// √Ψ·exp(branch·(iν/2)·∫_{w0}^{w} N/Ψ) and its w-derivatives.
struct FiniteGapValue {
  cplx value;
  cplx d1;
  cplx d2;
};

class FiniteGapSolution {
 public:
  /// branch = ±1. n_quad Gauss–Jacobi nodes for each integral.
  FiniteGapSolution(const SpectralPolynomial& sp, double sigma, int branch, double w0 = 1e-6,
                    int n_quad = 64);

  cplx nu() const { return nu_; }
  double nu2() const { return nu2_; }
  double sigma() const { return sigma_; }
  /// ν² = 0: both branches coincide.
  bool degenerate() const { return nu2_ == 0.0; }

  /// Requires w ∈ (0, 1) and no zero of Ψ between w0 and w
  /// (TurningPointError otherwise).
  FiniteGapValue eval(double w) const;
  /// ∫_{w0}^{w} N/Ψ du.
  double phase_integral(double w) const;

 private:
  double integral_from_zero(double x) const;
  double integral_direct(double lo, double hi) const;
  bool psi_vanishes_on(double lo, double hi) const;
  Jet psi(double w) const;
  double integrand(double u) const;  // N(u)/Ψ(u)
  double b0(double u) const;

  MeromorphyVector mv_;
  double k2_;
  double sigma_;
  int branch_;
  double w0_;
  std::vector<double> psi_coeffs_;  // Ψ(σ; w) in powers of w
  double nu2_;
  cplx nu_;
  int n_quad_;
  QuadratureRule endpoint_rule_;  // weight t^{-1/2}
  QuadratureRule plain_rule_;
};

/// Convenience wrapper returning the value only.
cplx finite_gap_eval(const SpectralPolynomial& sp, double sigma, double w, int branch, double w0 = 1e-6);

struct ThirdKindCheck {
  double integral_side;
  double theta_side;
  double abs_error() const { return std::abs(integral_side - theta_side); }
};
/// ∫₀^z k² snω cnω dnω sn²u / (1 − k² sn²ω sn²u) du against
/// ½ ln(Θ(z−ω)/Θ(z+ω)) + z Z(ω), for real ω and z.
ThirdKindCheck third_kind_integral_check(double omega, const EllipticContext& ctx, double z);

}  // namespace heun
