#pragma once

// The Beta-kernel integral transform of the local Heun function
//
//   Hn(k², s; α, β, γ, δ; w) = Γ(γ)/(Γ(α)Γ(γ−α)) ∫₀¹ t^{α−1}(1−t)^{γ−α−1}
//                               Hn(k², s; γ, β, α, δ+γ−α; wt) dt,
//
// and its k² → 0 (Bateman) and k² = 1 specialisations. Both sides are
// evaluated independently; the integral by Gauss–Jacobi with the kernel's
// exponents.

#include "heun/series.hpp"

namespace heun {

struct TransformSides {
  cplx lhs;
  cplx rhs;

  double abs_error() const { return std::abs(lhs - rhs); }
};

/// The transformed parameter set P′ = (k², s; γ, β, α, δ+γ−α).
HeunParams integral_transform_params(const HeunParams& p);

/// Requires real γ > α > 0 and |w| inside the series disk. α = γ is the
/// identity and is returned without quadrature.
TransformSides integral_transform_check(const HeunParams& p, cplx w, int n_quad = 64);

/// ₂F₁(a,b;c;w) against Γ(c)/(Γ(λ)Γ(c−λ)) ∫ t^{λ−1}(1−t)^{c−λ−1} ₂F₁(a,b;λ;wt) dt.
/// Requires real c > λ > 0 and |w| < 1.
TransformSides bateman_limit_check(cplx a, cplx b, double c, double lambda, cplx w, int n_quad = 64);

/// (1−w)^r ₂F₁(r+α, r+β; γ; w) against
/// Γ(γ)/(Γ(α)Γ(γ−α)) ∫ t^{α−1}(1−t)^{γ−α−1} (1−wt)^{r̃} ₂F₁(r̃+γ, r̃+β; α; wt) dt
/// with r = ρ − √(ρ² − αβ − s), ρ = (γ−α−β)/2, r̃ = ρ̃ − √(ρ̃² − βγ − s),
/// ρ̃ = −(γ−α+β)/2 (principal roots).
TransformSides k2_one_transform_check(double alpha, cplx beta, double gamma, cplx s, cplx w,
                                      int n_quad = 64);

}  // namespace heun
