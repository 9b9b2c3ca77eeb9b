#pragma once

// Local Heun function Hn(k², s; α, β, γ, δ; w) as the generating function of
// the birth–death recurrence
//
//   μ_{n+1} F_{n+1} = (λ_n + μ_n + γ_n − x) F_n − λ_{n−1} F_{n−1},
//   λ_n = k²(n+α)(n+β),  μ_n = n(n+γ−1),  γ_n = k'² δ n,  x = s + αβk²,
//
// with F_{−1} = 0, F_0 = 1. The series solves
//
//   F'' + (γ/w − δ/(1−w) − εk²/(1−k²w)) F' + (s + αβk²w)/(w(1−w)(1−k²w)) F = 0
//
// with ε = α + β + 1 − γ − δ.

#include <complex>
#include <span>
#include <vector>

namespace heun {

using cplx = std::complex<double>;

struct HeunParams {
  cplx k2;
  cplx s;
  cplx alpha;
  cplx beta;
  cplx gamma;
  cplx delta;

  /// Derived from the Fuchs relation γ + δ + ε = α + β + 1.
  cplx epsilon() const { return alpha + beta + 1.0 - gamma - delta; }
  /// x = s + αβk², the spectral variable of the recurrence.
  cplx x() const { return s + alpha * beta * k2; }
  /// min(1, 1/|k²|): distance from 0 to the nearest other singular point.
  double radius() const;
  bool is_real() const;
};

/// Real rates of the quadratic birth–death process with linear killing.
struct BDPRates {
  double k2;
  double alpha;
  double beta;
  double gamma;
  double delta;

  static BDPRates from(const HeunParams& p);

  double lambda(int n) const { return k2 * (n + alpha) * (n + beta); }
  double mu(int n) const { return n * (n + gamma - 1.0); }
  double killing(int n) const { return (1.0 - k2) * delta * n; }
  /// λ_n > 0 and μ_{n+1} > 0 for all n ≥ 0.
  bool positive() const;
  /// π_0 = 1, π_n = π_{n−1} λ_{n−1} / μ_n.
  std::vector<double> pi(int nmax) const;
};

struct HeunValue {
  cplx value;
  cplx d1;  // dHn/dw
  cplx d2;  // d²Hn/dw²
  int n_terms;
  double tail_estimate;
};

struct SeriesSolution {
  std::vector<cplx> coeffs;
  HeunParams params;
  /// |F_nmax|, the magnitude of the last retained coefficient.
  double tail_estimate;

  /// Truncated sum and its first two derivatives at w (no tail control).
  HeunValue evaluate(cplx w) const;
  /// Real parts of the truncated sum on a real grid (SIMD Horner); requires
  /// real coefficients.
  void evaluate_real(std::span<const double> w, std::span<double> out) const;
};

/// F_0..F_nmax. Throws DegenerateError when γ is a nonpositive integer.
SeriesSolution heun_coefficients(const HeunParams& p, int nmax);

/// Hn and its first two w-derivatives with tail bound below tol.
/// Throws ConvergenceError when |w| ≥ (1 − 1e−6)·radius ("outside series disk").
HeunValue heun_eval(const HeunParams& p, cplx w, double tol = 1e-15);

/// |F'' + P F' + Q F| / (|F''| + |P F'| + |Q F|) for the Heun operator with
/// parameters p; zero when every term vanishes.
double heun_residual(const HeunParams& p, cplx w, cplx f, cplx d1, cplx d2);

/// The number of terms heun_eval would need at radius |w|, for batch use.
int heun_terms_needed(const HeunParams& p, double abs_w, double tol = 1e-15);

/// c_{n+1}/c_n for c_n = P_n(0)², n = 0..nmax−1, iterating the ratio
/// F_{n+1}(0)/F_n(0) so nothing overflows. Requires the positivity constraints.
std::vector<double> determinacy_ratio(const HeunParams& p, int nmax);

struct OrthogonalPolynomials {
  std::vector<double> P;
  std::vector<double> Q;
};

/// P_n(x), Q_n(x) for n = 0..nmax from x P_n = b_{n−1}P_{n−1} + a_n P_n + b_n P_{n+1},
/// P_0 = 1, P_1 = (x − a_0)/b_0, Q_0 = 0, Q_1 = 1/b_0. Needs a, b of length ≥ nmax.
OrthogonalPolynomials second_kind_polynomials(std::span<const double> a, std::span<const double> b,
                                              int nmax, double x);

/// b_n (P_{n+1} Q_n − P_n Q_{n+1}) for n = 0..nmax−1; constant (−1).
std::vector<double> casorati(const OrthogonalPolynomials& pq, std::span<const double> b);

}  // namespace heun
