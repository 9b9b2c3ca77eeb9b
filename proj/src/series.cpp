#include "heun/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heun/errors.hpp"
#include "heun/hypergeometric.hpp"
#include "heun/simd.hpp"

namespace heun {

namespace {

constexpr long kMaxSeriesTerms = 5'000'000;

void require_nondegenerate(const HeunParams& p) {
  if (is_nonpositive_integer(p.gamma)) {
    throw DegenerateError("heun: gamma is a nonpositive integer (degenerate recurrence)");
  }
}

// One step of the recurrence: F_{n+1} from F_n, F_{n−1}.
struct Recurrence {
  cplx k2, kp2, alpha, beta, gamma, delta, x;

  explicit Recurrence(const HeunParams& p)
      : k2(p.k2), kp2(1.0 - p.k2), alpha(p.alpha), beta(p.beta), gamma(p.gamma), delta(p.delta),
        x(p.x()) {}

  cplx lambda(double n) const { return k2 * (n + alpha) * (n + beta); }
  cplx mu(double n) const { return n * (n + gamma - 1.0); }
  cplx killing(double n) const { return kp2 * delta * n; }

  cplx next(long n, cplx fn, cplx fprev) const {
    const double dn = static_cast<double>(n);
    cplx rhs = (lambda(dn) + mu(dn) + killing(dn) - x) * fn;
    if (n >= 1) rhs -= lambda(dn - 1.0) * fprev;
    return rhs / mu(dn + 1.0);
  }
};

// Σ_{k≥1} (n+k)^p ρ^k for p = 0, 1, 2.
double tail_factor(int p, double n, double rho) {
  const double g = rho / (1.0 - rho);
  const double g2 = rho / ((1.0 - rho) * (1.0 - rho));
  switch (p) {
    case 0:
      return g;
    case 1:
      return n * g + g2;
    default:
      return n * n * g + 2.0 * n * g2 + rho * (1.0 + rho) / std::pow(1.0 - rho, 3);
  }
}

}  // namespace

double HeunParams::radius() const {
  const double a = std::abs(k2);
  return a <= 1.0 ? 1.0 : 1.0 / a;
}

bool HeunParams::is_real() const {
  for (cplx v : {k2, s, alpha, beta, gamma, delta}) {
    if (v.imag() != 0.0) return false;
  }
  return true;
}

BDPRates BDPRates::from(const HeunParams& p) {
  if (!p.is_real()) throw DomainError("BDPRates: parameters must be real");
  return {p.k2.real(), p.alpha.real(), p.beta.real(), p.gamma.real(), p.delta.real()};
}

bool BDPRates::positive() const {
  return k2 > 0.0 && k2 < 1.0 && alpha > 0.0 && beta > 0.0 && gamma > 0.0;
}

std::vector<double> BDPRates::pi(int nmax) const {
  std::vector<double> out(static_cast<std::size_t>(std::max(nmax, 0)) + 1, 1.0);
  for (int n = 1; n <= nmax; ++n) out[n] = out[n - 1] * lambda(n - 1) / mu(n);
  return out;
}

SeriesSolution heun_coefficients(const HeunParams& p, int nmax) {
  require_nondegenerate(p);
  if (nmax < 1) throw DomainError("heun_coefficients: nmax must be at least 1");
  const Recurrence rec(p);
  std::vector<cplx> f;
  f.reserve(static_cast<std::size_t>(nmax) + 1);
  f.push_back(1.0);
  for (long n = 0; n < nmax; ++n) {
    const cplx next = rec.next(n, f[n], n >= 1 ? f[n - 1] : cplx(0.0));
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
      throw ConvergenceError("heun_coefficients: overflow at n = " + std::to_string(n + 1));
    }
    f.push_back(next);
  }
  const double last = std::abs(f.back());
  return {std::move(f), p, last};
}

HeunValue SeriesSolution::evaluate(cplx w) const {
  cplx v = 0.0, d1 = 0.0, d2 = 0.0;
  // Horner on the series and its two derivatives simultaneously.
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    d2 = d2 * w + 2.0 * d1;
    d1 = d1 * w + v;
    v = v * w + coeffs[k];
  }
  const double tail = coeffs.empty() ? 0.0
                                     : std::abs(coeffs.back()) *
                                           std::pow(std::abs(w), static_cast<double>(coeffs.size() - 1));
  return {v, d1, d2, static_cast<int>(coeffs.size()), tail};
}

void SeriesSolution::evaluate_real(std::span<const double> w, std::span<double> out) const {
  std::vector<double> re(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].imag() != 0.0) throw DomainError("evaluate_real: complex coefficients");
    re[k] = coeffs[k].real();
  }
  simd::horner(re, w, out);
}

HeunValue heun_eval(const HeunParams& p, cplx w, double tol) {
  require_nondegenerate(p);
  const double aw = std::abs(w);
  const double radius = p.radius();
  if (!(aw < (1.0 - 1e-6) * radius)) {
    throw ConvergenceError("heun_eval: w outside series disk");
  }
  const Recurrence rec(p);
  if (aw == 0.0) {
    const cplx f1 = rec.next(0, 1.0, 0.0);
    const cplx f2 = rec.next(1, f1, 1.0);
    return {1.0, f1, 2.0 * f2, 1, 0.0};
  }
  const double rho_floor = aw / radius;
  cplx fprev = 0.0, fn = 1.0;
  cplx value = 0.0, d1 = 0.0, d2 = 0.0;
  cplx wpow = 1.0;  // w^n
  // |t_n| for the last four n. The tail estimate works on the envelope
  // max(|t_n|, |t_{n−1}|) and its two-step ratio, which is insensitive to
  // isolated cancellations and to series in w² with round-off odd terms.
  double mags[4] = {0, 0, 0, 0};
  double rho_env[4] = {0, 0, 0, 0};
  int calm = 0;
  for (long n = 0; n < kMaxSeriesTerms; ++n) {
    const double dn = static_cast<double>(n);
    const cplx t = fn * wpow;
    value += t;
    d1 += dn * t / w;
    d2 += dn * (dn - 1.0) * t / (w * w);
    const double mag = std::abs(t);
    if (!std::isfinite(mag)) throw ConvergenceError("heun_eval: overflow in series");
    if (n >= 1 && fn == cplx(0.0) && fprev == cplx(0.0)) {
      return {value, d1, d2, static_cast<int>(n + 1), 0.0};
    }
    mags[n % 4] = mag;
    const double env = std::max(mag, mags[(n + 3) % 4]);
    const double env_prev = std::max(mags[(n + 2) % 4], mags[(n + 1) % 4]);
    if (n >= 3) rho_env[n % 4] = env_prev > 0.0 ? std::sqrt(env / env_prev) : (env > 0.0 ? 1.0 : 0.0);
    double rho = rho_floor;
    for (double r : rho_env) rho = std::max(rho, r);
    if (n >= 6 && rho < 0.9999) {
      const double tv = env * tail_factor(0, dn, rho);
      const double t1 = env * tail_factor(1, dn, rho) / aw;
      const double t2 = env * tail_factor(2, dn, rho) / (aw * aw);
      const bool ok = tv <= tol * std::max(1.0, std::abs(value)) &&
                      t1 <= tol * std::max(1.0, std::abs(d1)) &&
                      t2 <= tol * std::max(1.0, std::abs(d2));
      calm = ok ? calm + 1 : 0;
      if (calm >= 2) return {value, d1, d2, static_cast<int>(n + 1), tv};
    }
    const cplx next = rec.next(n, fn, fprev);
    fprev = fn;
    fn = next;
    wpow *= w;
  }
  throw ConvergenceError("heun_eval: series did not converge");
}

double heun_residual(const HeunParams& p, cplx w, cplx f, cplx d1, cplx d2) {
  const cplx pc = p.gamma / w - p.delta / (1.0 - w) - p.epsilon() * p.k2 / (1.0 - p.k2 * w);
  const cplx qc = (p.s + p.alpha * p.beta * p.k2 * w) / (w * (1.0 - w) * (1.0 - p.k2 * w));
  const double scale = std::abs(d2) + std::abs(pc * d1) + std::abs(qc * f);
  if (scale == 0.0) return 0.0;
  return std::abs(d2 + pc * d1 + qc * f) / scale;
}

int heun_terms_needed(const HeunParams& p, double abs_w, double tol) {
  return heun_eval(p, cplx(abs_w, 0.0), tol).n_terms;
}

std::vector<double> determinacy_ratio(const HeunParams& p, int nmax) {
  const BDPRates rates = BDPRates::from(p);
  if (!rates.positive()) {
    throw DomainError("determinacy_ratio: positivity constraints λ_n > 0, μ_{n+1} > 0 violated");
  }
  if (nmax < 1) throw DomainError("determinacy_ratio: nmax must be at least 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(nmax));
  double r = rates.lambda(0) / rates.mu(1);  // F_1(0)/F_0(0)
  out.push_back(rates.mu(1) / rates.lambda(0) * r * r);
  for (int n = 1; n < nmax; ++n) {
    const double a = rates.lambda(n) + rates.mu(n) + rates.killing(n);
    r = (a - rates.lambda(n - 1) / r) / rates.mu(n + 1);
    if (!(r > 0.0)) throw DomainError("determinacy_ratio: F_n(0) changed sign");
    out.push_back(rates.mu(n + 1) / rates.lambda(n) * r * r);
  }
  return out;
}

OrthogonalPolynomials second_kind_polynomials(std::span<const double> a, std::span<const double> b,
                                              int nmax, double x) {
  if (nmax < 1) throw DomainError("second_kind_polynomials: nmax must be at least 1");
  if (a.size() < static_cast<std::size_t>(nmax) || b.size() < static_cast<std::size_t>(nmax)) {
    throw DomainError("second_kind_polynomials: need nmax recurrence coefficients");
  }
  for (int n = 0; n < nmax; ++n) {
    if (!(b[n] > 0.0)) throw DomainError("second_kind_polynomials: b_n must be positive");
  }
  OrthogonalPolynomials out;
  out.P.resize(static_cast<std::size_t>(nmax) + 1);
  out.Q.resize(static_cast<std::size_t>(nmax) + 1);
  out.P[0] = 1.0;
  out.P[1] = (x - a[0]) / b[0];
  out.Q[0] = 0.0;
  out.Q[1] = 1.0 / b[0];
  for (int n = 1; n < nmax; ++n) {
    out.P[n + 1] = ((x - a[n]) * out.P[n] - b[n - 1] * out.P[n - 1]) / b[n];
    out.Q[n + 1] = ((x - a[n]) * out.Q[n] - b[n - 1] * out.Q[n - 1]) / b[n];
  }
  return out;
}

std::vector<double> casorati(const OrthogonalPolynomials& pq, std::span<const double> b) {
  std::vector<double> out;
  for (std::size_t n = 0; n + 1 < pq.P.size() && n < b.size(); ++n) {
    out.push_back(b[n] * (pq.P[n + 1] * pq.Q[n] - pq.P[n] * pq.Q[n + 1]));
  }
  return out;
}

}  // namespace heun
