#pragma once

// Integer data (m₀, m₁, m₂, m₃) for which the z-form of the Heun equation has
// meromorphic solutions:
//
//   γ = ½ − m₁,  δ = ½ − m₂,  ε = ½ − m₃,  M = m₁ + m₂ + m₃,
//   α = −(m₀ + M)/2,  β = (m₀ − M + 1)/2,  N = m₀ + M.

#include <string>
#include <string_view>

#include "heun/series.hpp"

namespace heun {

struct MeromorphyVector {
  int m0 = 0;
  int m1 = 0;
  int m2 = 0;
  int m3 = 0;

  int M() const { return m1 + m2 + m3; }
  int N() const { return m0 + M(); }
  bool operator==(const MeromorphyVector&) const = default;
};

/// Throws DomainError when any entry is negative.
void require_nonnegative(const MeromorphyVector& mv);

/// The exponent parameters above with the given k² and s (σ = 4s).
HeunParams params_from_meromorphy(const MeromorphyVector& mv, cplx k2 = 0.0, cplx s = 0.0);

/// "m0,m1,m2,m3".
MeromorphyVector parse_meromorphy(std::string_view text);
std::string format_meromorphy(const MeromorphyVector& mv);

}  // namespace heun
