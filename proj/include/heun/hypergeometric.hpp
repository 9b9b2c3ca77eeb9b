#pragma once

#include <complex>

namespace heun {

using cplx = std::complex<double>;

/// Upper and lower parameters of a Gauss ₂F₁(a, b; c; ·).
struct Hyp2F1Spec {
  cplx a;
  cplx b;
  cplx c;
};

/// Gauss series ₂F₁(a, b; c; x) for |x| < 1 with geometric tail control.
/// Throws DegenerateError when c ∈ {0, −1, −2, ...}.
cplx hyp2f1(cplx a, cplx b, cplx c, cplx x, double tol = 1e-15);

inline cplx hyp2f1(const Hyp2F1Spec& p, cplx x, double tol = 1e-15) {
  return hyp2f1(p.a, p.b, p.c, x, tol);
}

/// True when z lies within 1e-12 of {0, −1, −2, ...}.
bool is_nonpositive_integer(cplx z);

}  // namespace heun
