#pragma once

// Heun's equation in the variable z with w = sn²z:
//
//   y'' + [(2γ−1) cn dn/sn − (2δ−1) sn dn/cn − (2ε−1) k² sn cn/dn] y'
//       + 4(s + αβ k² sn²z) y = 0,
//
// its Carlitz point (γ = δ = ε = ½, αβ = 0), and the four level-one
// theta-quotient solutions
//
//   m₀: e^{zZ(ω)} H(z−ω)/Θ(z)    dn²ω = σ − k²
//   m₁: e^{zZ(ω)} Θ(z−ω)/Θ(z)    dn²ω = σ + 1
//   m₂: e^{zZ(ω)} Θ₁(z−ω)/Θ(z)   dn²ω = σ + 1 − k²
//   m₃: e^{zZ(ω)} H₁(z−ω)/Θ(z)   dn²ω = σ
//
// with σ = 4s.

#include <optional>
#include <string_view>

#include "heun/elliptic.hpp"
#include "heun/meromorphy.hpp"
#include "heun/series.hpp"

namespace heun {

/// z(w) = ∫₀^w du / (2√(u(1−u)(1−k²u))) = sn⁻¹(√w), for w ∈ [0, 1].
double z_of_w(double w, const EllipticContext& ctx);

/// Parameters (k², s; 0, ½, ½, ½) of the Carlitz pair.
HeunParams carlitz_params(double k2, cplx s);

/// exp(±2i√s·z(w)) and their first two w-derivatives.
struct CarlitzPair {
  double z;
  cplx y_plus;
  cplx y_minus;
  cplx d1_plus;
  cplx d1_minus;
  cplx d2_plus;
  cplx d2_minus;
};
CarlitzPair carlitz_pair(const EllipticContext& ctx, cplx s, double w);

struct ZFormCoefficients {
  cplx first_order;
  cplx zero_order;
};
/// Coefficients of y' and y in the z-form. Throws PoleError when z is within
/// kPoleTol of a zero of sn, cn or dn whose term is present.
ZFormCoefficients z_form_coefficients(const HeunParams& p, cplx z, const EllipticContext& ctx);

/// |y'' + a y' + b y| / (|y''| + |a y'| + |b y|).
double z_form_residual(const ZFormCoefficients& c, cplx y, cplx d1, cplx d2);

enum class LevelOneFamily { M0, M1, M2, M3 };

std::string_view family_name(LevelOneFamily f);
std::optional<LevelOneFamily> parse_family(std::string_view name);
MeromorphyVector family_vector(LevelOneFamily f);

/// dn²ω required by the family at σ.
double family_constraint(LevelOneFamily f, double sigma, double k2);

/// ω ∈ [0, K] with dn²ω equal to the family constraint. Throws DomainError
/// when the constraint lies outside [k′², 1] (complex ω).
double solve_omega(LevelOneFamily f, double sigma, const EllipticContext& ctx);

/// A value with its first two derivatives in the independent variable.
struct Jet {
  double value;
  double d1;
  double d2;
};

class LevelOneSolution {
 public:
  LevelOneSolution(LevelOneFamily family, double sigma, const EllipticContext& ctx);

  LevelOneFamily family() const { return family_; }
  double sigma() const { return sigma_; }
  double omega() const { return omega_; }
  /// Z(ω), the exponential rate.
  double multiplier() const { return multiplier_; }
  const EllipticContext& context() const { return ctx_; }
  /// True when y(z) and y(−z) are dependent (value/derivative determinant
  /// at z = 0.37K below 1e−8 relative).
  bool degenerate() const { return degenerate_; }

  /// y(z) for sign = +1, the second solution y(−z) for sign = −1, with
  /// derivatives in z.
  Jet eval(double z, int sign = 1) const;
  double value(double z, int sign = 1) const { return eval(z, sign).value; }

  /// Heun parameters of the family at this σ.
  HeunParams params() const;
  /// Relative residual of the z-form equation at z.
  double residual(double z, int sign = 1) const;

 private:
  Jet eval_plus(double z) const;

  LevelOneFamily family_;
  double sigma_;
  double omega_;
  double multiplier_;
  EllipticContext ctx_;
  bool degenerate_ = false;
};

/// y(z) from the family's theta quotient.
double level_one_eval(LevelOneFamily f, double sigma, const EllipticContext& ctx, double z);

/// The degree-one polynomial Ψ(σ; w) proportional to y(z)·y(−z).
double level_one_psi(LevelOneFamily f, double sigma, double k2, double w);

/// Special σ of the m₀ (Lamé n = 1) family where y(±z) coincide.
enum class DegenerateSigma { OnePlusK2, One, K2 };

/// A·f(z) + B·f(z)(L(z) + c·z) with (f, L, c) =
///   σ = 1+k²:  (sn, H′/H,  (E−K)/K)
///   σ = 1:     (cn, H₁′/H₁, (E−k′²K)/K)
///   σ = k²:    (dn, Θ₁′/Θ₁, E/K)
/// Throws PoleError at zeros of the theta factor.
Jet degenerate_second_solution(DegenerateSigma which, const EllipticContext& ctx, double z, double A,
                               double B);
double degenerate_sigma_value(DegenerateSigma which, double k2);

}  // namespace heun
