#include "heun/hypergeometric.hpp"

#include <algorithm>
#include <cmath>

#include "heun/errors.hpp"

namespace heun {

bool is_nonpositive_integer(cplx z) {
  return std::abs(z.imag()) < 1e-12 && z.real() < 0.5 &&
         std::abs(z.real() - std::round(z.real())) < 1e-12;
}

cplx hyp2f1(cplx a, cplx b, cplx c, cplx x, double tol) {
  if (is_nonpositive_integer(c)) throw DegenerateError("hyp2f1: c is a nonpositive integer");
  if (!(std::abs(x) < 1.0)) throw DomainError("hyp2f1: |x| must be below 1");
  const double ax = std::abs(x);
  cplx sum = 1.0;
  cplx term = 1.0;
  constexpr long kMaxTerms = 5'000'000;
  int calm = 0;
  for (long n = 0; n < kMaxTerms; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x;
    if (term == cplx(0.0)) return sum + term;
    sum += term;
    const double next = ax * std::abs((a + dn + 1.0) * (b + dn + 1.0) / ((c + dn + 1.0) * (dn + 2.0)));
    const double rho = std::max(next, ax);
    const double tail = std::abs(term) * rho / (1.0 - rho);
    calm = tail <= tol * std::max(1.0, std::abs(sum)) ? calm + 1 : 0;
    if (calm >= 2) return sum;
  }
  throw ConvergenceError("hyp2f1: series did not converge");
}

}  // namespace heun
