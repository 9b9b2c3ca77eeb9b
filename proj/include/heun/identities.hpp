#pragma once

// Closed-form degenerations, transformations and reductions of the local Heun
// function. Each returns the right-hand side as data (new parameters,
// prefactor, hypergeometric spec) so callers can evaluate both sides
// independently.

#include <optional>
#include <string_view>

#include "heun/hypergeometric.hpp"
#include "heun/series.hpp"

namespace heun {

/// k² = 0: Hn = ₂F₁(r₊, r₋; γ; w), r± = ρ ± √(ρ² + s), ρ = (γ+δ−1)/2.
struct K2ZeroReduction {
  cplx rho;
  cplx r_plus;
  cplx r_minus;
  Hyp2F1Spec spec;

  cplx evaluate(cplx w, double tol = 1e-15) const { return hyp2f1(spec, w, tol); }
};
K2ZeroReduction reduce_k2_zero(const HeunParams& p);

/// k² = 1: Hn = (1−w)^r ₂F₁(r+α, r+β; γ; w), r = ρ − √(ρ² − αβ − s), ρ = (γ−α−β)/2.
struct K2OneReduction {
  cplx rho;
  cplx r;
  Hyp2F1Spec spec;

  cplx prefactor(cplx w) const { return std::pow(1.0 - w, r); }
  cplx evaluate(cplx w, double tol = 1e-15) const { return prefactor(w) * hyp2f1(spec, w, tol); }
};
K2OneReduction reduce_k2_one(const HeunParams& p);

/// F₂ = ∫_{base}^{w} u^{−γ}(1−u)^{−δ}(1−k²u)^{−ε} du for s = αβ = 0, with its
/// first two derivatives. base = 0 when γ is real and below 1, else 1/2.
struct TrivialSecondSolution {
  cplx value;
  cplx d1;
  cplx d2;
  double base;
};
TrivialSecondSolution trivial_second_solution(const HeunParams& p, double w, int n_quad = 64);

/// F(w) = w^ρ (1−w)^σ (1−k²w)^τ F̃(w) with ρ ∈ {0, 1−γ}, σ ∈ {0, 1−δ},
/// τ ∈ {0, 1−ε}; `params` are those of F̃.
struct PowerFactorTransform {
  cplx rho;
  cplx sigma;
  cplx tau;
  HeunParams params;

  cplx prefactor(cplx w, cplx k2) const;
};
PowerFactorTransform power_factor_transform(const HeunParams& p, cplx rho, cplx sigma, cplx tau);

/// prefactor(w)·Hn(params; w) with its first two w-derivatives.
HeunValue power_factor_eval(const PowerFactorTransform& t, cplx w, double tol = 1e-15);

/// Hn′(w) = factor(w)·Hn(params; w) in the four cases where the derivative
/// stays in the Heun class:
///   1: s = 0          factor −αβk²w/(γ+1)
///   2: s = −αβk²      factor αβk²(1−w)/γ
///   3: s = −αβ        factor αβ(1−k²w)/γ
///   4: α = 0          factor −s/γ
struct DerivativeIdentity {
  int which;
  cplx constant;
  HeunParams params;

  cplx factor(cplx w) const;
};
DerivativeIdentity derivative_identity(const HeunParams& p, int which);

/// Hn(P; w) = prefactor(w)·Hn(params; map(w)).
struct ParameterTransform {
  enum class Kind { Euler, Pfaff } kind;
  HeunParams params;
  cplx exponent;  // prefactor is (1−w)^exponent

  cplx prefactor(cplx w) const { return std::pow(1.0 - w, exponent); }
  cplx map(cplx w) const { return kind == Kind::Euler ? w : w / (w - 1.0); }
};
/// (1−w)^{1−δ} Hn(k², s+γ(δ−1); α−δ+1, β−δ+1, γ, 2−δ; w).
ParameterTransform euler_transform(const HeunParams& p);
/// (1−w)^{−α} Hn(k′², −(s+αγ); α, α−δ+1, γ, α−β+1; w/(w−1)).
ParameterTransform pfaff_transform(const HeunParams& p);

enum class Reduction { Kuiken1, Kuiken2, Kuiken3, Maier1, Maier2, Joyce };

std::string_view reduction_name(Reduction r);
std::optional<Reduction> parse_reduction(std::string_view name);

/// Free parameters (a, b, c) of a reduction; Maier rows ignore c, Joyce all.
struct ReductionFree {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct ReductionSides {
  HeunParams heun;
  Hyp2F1Spec hyp;
  double argument;   // R(w)
  double prefactor;  // 1 except Joyce
  cplx lhs;
  cplx rhs;

  double abs_error() const { return std::abs(lhs - rhs); }
};

HeunParams reduction_params(Reduction r, const ReductionFree& f);
/// Both sides evaluated independently. Throws DomainError outside the common
/// convergence domain (|w| below the Heun radius, |R(w)| < 1, Joyce w ∈ [0, 1)).
ReductionSides reduction_check(Reduction r, const ReductionFree& f, double w);

}  // namespace heun
