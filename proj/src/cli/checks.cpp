#include "heun/cli/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "heun/cli/context_cache.hpp"
#include "heun/elliptic.hpp"
#include "heun/elliptic_solutions.hpp"
#include "heun/errors.hpp"
#include "heun/finite_gap.hpp"
#include "heun/identities.hpp"
#include "heun/transforms.hpp"

namespace heun::cli {

void RunConfig::validate() const {
  if (!(precision_tol > 0.0)) throw DomainError("precision_tol must be positive");
  if (quad_order < 1) throw DomainError("quad_order must be positive");
  if (series_nmax < 16) throw DomainError("series_nmax must be at least 16");
}

namespace {

// Deterministic across standard libraries, unlike std::uniform_real_distribution.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 rng_;
};

struct Trial {
  int draw;
  int draws;
  const RunConfig& cfg;
  Draws& rng;
  std::vector<std::pair<std::string, double>> params;
  bool degenerate = false;

  double pick(const char* name, double lo, double hi) {
    const double v = rng.uniform(lo, hi);
    params.emplace_back(name, v);
    return v;
  }
  double fixed(const char* name, double v) {
    params.emplace_back(name, v);
    return v;
  }
};

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return g;
}

HeunParams generic_params(Trial& t) {
  HeunParams p;
  p.k2 = t.pick("k2", 0.1, 0.9);
  p.s = t.pick("s", -0.5, 0.5);
  p.alpha = t.pick("alpha", 0.1, 1.5);
  p.beta = t.pick("beta", 0.1, 1.5);
  p.gamma = t.pick("gamma", 0.3, 2.0);
  p.delta = t.pick("delta", 0.1, 1.5);
  return p;
}

double derivative_check(Trial& t, int which) {
  HeunParams p = generic_params(t);
  switch (which) {
    case 1:
      p.s = 0.0;
      break;
    case 2:
      p.s = -p.alpha * p.beta * p.k2;
      break;
    case 3:
      p.s = -p.alpha * p.beta;
      break;
    default:
      p.alpha = 0.0;
      // The last draw exercises the s = 0 edge where both sides vanish.
      if (t.draw == t.draws - 1) {
        p.s = 0.0;
        t.degenerate = true;
      }
      break;
  }
  t.params[1].second = p.s.real();
  t.params[2].second = p.alpha.real();
  const DerivativeIdentity id = derivative_identity(p, which);
  double err = 0.0;
  for (double w : grid(0.05, 0.45, 10)) {
    const cplx lhs = heun_eval(p, w).d1;
    const cplx rhs = id.factor(w) * heun_eval(id.params, w).value;
    err = std::max(err, std::abs(lhs - rhs));
  }
  return err;
}

double reduction_suite(Trial& t, Reduction r) {
  ReductionFree f;
  double hi = 0.85;
  switch (r) {
    case Reduction::Kuiken1:
      f = {t.pick("a", 0.1, 0.9), t.pick("b", 0.1, 0.9), t.pick("c", 0.6, 1.5)};
      hi = 0.85;
      break;
    case Reduction::Kuiken2:
      f = {t.pick("a", 0.1, 0.9), t.pick("b", 0.1, 0.9), t.pick("c", 0.3, 1.5)};
      hi = 0.7;
      break;
    case Reduction::Kuiken3:
      f = {t.pick("a", 0.1, 0.9), t.pick("b", 0.1, 0.9), t.pick("c", 0.3, 1.5)};
      hi = 0.35;
      break;
    case Reduction::Maier1:
      f = {t.pick("a", 0.1, 0.9), t.pick("b", 0.1, 0.9), 0.0};
      hi = 0.6;
      break;
    case Reduction::Maier2:
      f = {t.pick("a", 0.1, 0.9), t.pick("b", 0.1, 0.9), 0.0};
      hi = 0.15;
      break;
    case Reduction::Joyce:
      hi = 0.9;
      break;
  }
  double err = 0.0;
  for (double w : grid(r == Reduction::Joyce ? 0.0 : 0.02, hi, 10)) {
    err = std::max(err, reduction_check(r, f, w).abs_error());
  }
  return err;
}

double euler_suite(Trial& t) {
  const HeunParams p = generic_params(t);
  const ParameterTransform e = euler_transform(p);
  double err = 0.0;
  for (double w : grid(0.05, 0.8, 10)) {
    err = std::max(err, std::abs(heun_eval(p, w).value - e.prefactor(w) * heun_eval(e.params, e.map(w)).value));
  }
  return err;
}

double pfaff_suite(Trial& t) {
  const HeunParams p = generic_params(t);
  const ParameterTransform e = pfaff_transform(p);
  double err = 0.0;
  for (double w : grid(0.05, 0.45, 10)) {
    err = std::max(err, std::abs(heun_eval(p, w).value - e.prefactor(w) * heun_eval(e.params, e.map(w)).value));
  }
  return err;
}

double red_suite(Trial& t, bool one) {
  HeunParams p;
  p.k2 = t.fixed("k2", one ? 1.0 : 0.0);
  p.s = t.pick("s", -0.5, 0.5);
  p.alpha = t.pick("alpha", 0.1, 1.0);
  p.beta = t.pick("beta", 0.1, 1.0);
  p.gamma = t.pick("gamma", 0.3, 2.0);
  p.delta = t.pick("delta", 0.1, 1.5);
  double err = 0.0;
  for (double w : grid(0.05, 0.8, 10)) {
    const cplx rhs = one ? reduce_k2_one(p).evaluate(w) : reduce_k2_zero(p).evaluate(w);
    err = std::max(err, std::abs(heun_eval(p, w).value - rhs));
  }
  return err;
}

double power_factor_suite(Trial& t) {
  HeunParams p;
  p.k2 = t.pick("k2", 0.1, 0.9);
  p.s = t.pick("s", -0.5, 0.5);
  p.alpha = t.pick("alpha", 0.1, 1.5);
  p.beta = t.pick("beta", 0.1, 1.5);
  p.gamma = t.pick("gamma", 0.2, 0.8);
  p.delta = t.pick("delta", 0.2, 0.8);
  const int mask = t.draw % 8;
  t.fixed("mask", mask);
  const PowerFactorTransform tr = power_factor_transform(p, (mask & 1) ? 1.0 - p.gamma : 0.0,
                                                         (mask & 2) ? 1.0 - p.delta : 0.0,
                                                         (mask & 4) ? 1.0 - p.epsilon() : 0.0);
  double err = 0.0;
  for (double w : grid(0.05, 0.8, 10)) {
    const HeunValue v = power_factor_eval(tr, w);
    err = std::max(err, heun_residual(p, w, v.value, v.d1, v.d2));
  }
  return err;
}

double trivial_suite(Trial& t) {
  HeunParams p;
  p.k2 = t.pick("k2", 0.1, 0.9);
  p.s = 0.0;
  p.alpha = 0.0;
  p.beta = t.pick("beta", 0.1, 1.5);
  p.gamma = t.draw % 2 == 0 ? t.pick("gamma", 0.2, 0.9) : t.pick("gamma", 1.2, 1.8);
  p.delta = t.pick("delta", 0.2, 0.8);
  double err = 0.0;
  for (double w : grid(0.05, 0.9, 10)) {
    const TrivialSecondSolution f = trivial_second_solution(p, w, t.cfg.quad_order);
    err = std::max(err, heun_residual(p, w, f.value, f.d1, f.d2));
  }
  return err;
}

double integral_transform_suite(Trial& t) {
  HeunParams p;
  p.k2 = t.pick("k2", 0.1, 0.9);
  p.s = t.pick("s", -0.5, 0.5);
  p.alpha = t.pick("alpha", 0.3, 1.2);
  p.beta = t.pick("beta", 0.1, 1.0);
  p.gamma = p.alpha + t.pick("gamma_minus_alpha", 0.3, 1.2);
  p.delta = t.pick("delta", 0.1, 1.0);
  double err = 0.0;
  for (double w : grid(0.05, 0.6, 6)) {
    err = std::max(err, integral_transform_check(p, w, t.cfg.quad_order).abs_error());
  }
  return err;
}

double bateman_suite(Trial& t) {
  const double a = t.pick("a", 0.1, 1.5);
  const double b = t.pick("b", 0.1, 1.5);
  const double lambda = t.pick("lambda", 0.3, 1.2);
  const double c = lambda + t.pick("c_minus_lambda", 0.3, 1.2);
  double err = 0.0;
  for (double w : grid(0.05, 0.6, 6)) {
    err = std::max(err, bateman_limit_check(a, b, c, lambda, w, t.cfg.quad_order).abs_error());
  }
  return err;
}

double k2_one_suite(Trial& t) {
  const double alpha = t.pick("alpha", 0.3, 1.2);
  const double beta = t.pick("beta", 0.1, 1.0);
  const double gamma = alpha + t.pick("gamma_minus_alpha", 0.3, 1.2);
  const double s = t.pick("s", -0.3, 0.3);
  double err = 0.0;
  for (double w : grid(0.05, 0.6, 6)) {
    err = std::max(err, k2_one_transform_check(alpha, beta, gamma, s, w, t.cfg.quad_order).abs_error());
  }
  return err;
}

double theta_suite(Trial& t) {
  const EllipticContext ctx = cached_context(t.pick("k2", 0.1, 0.9));
  const double omega = t.pick("omega_over_K", 0.1, 0.9) * ctx.K();
  std::optional<double> ref;
  double err = 0.0;
  for (double z : grid(0.05 * ctx.K(), 1.95 * ctx.K(), 20)) {
    const ThetaProductCheck c = theta_product_identity_check(z, omega, ctx);
    if (!c.ratio || std::abs(c.rhs) < 1e-3) continue;
    if (!ref) ref = *c.ratio;
    err = std::max(err, std::abs(*c.ratio / *ref - 1.0));
  }
  return err;
}

double third_kind_suite(Trial& t) {
  const EllipticContext ctx = cached_context(t.pick("k2", 0.1, 0.9));
  const double omega = t.pick("omega_over_K", 0.1, 0.9) * ctx.K();
  double err = 0.0;
  for (double z : grid(0.1 * ctx.K(), ctx.K(), 6)) {
    err = std::max(err, third_kind_integral_check(omega, ctx, z).abs_error());
  }
  return err;
}

double carlitz_suite(Trial& t) {
  constexpr double kS[] = {0.25, 1.0, -0.5};
  const double k2 = t.pick("k2", 0.1, 0.9);
  const double s = t.fixed("s", kS[t.draw % 3]);
  const EllipticContext ctx = cached_context(k2);
  const HeunParams p = carlitz_params(k2, s);
  double err = 0.0;
  for (double w : grid(0.05, 0.95, 10)) {
    const CarlitzPair c = carlitz_pair(ctx, s, w);
    err = std::max(err, heun_residual(p, w, c.y_plus, c.d1_plus, c.d2_plus));
    err = std::max(err, heun_residual(p, w, c.y_minus, c.d1_minus, c.d2_minus));
  }
  return err;
}

double level_one_suite(Trial& t) {
  const auto family = static_cast<LevelOneFamily>(t.draw % 4);
  t.fixed("family", t.draw % 4);
  const EllipticContext ctx = cached_context(t.pick("k2", 0.1, 0.9));
  const double target = t.pick("dn2_omega", ctx.kprime2() + 0.01, 0.99);
  const double sigma = t.fixed("sigma", target - family_constraint(family, 0.0, ctx.k2()));
  const LevelOneSolution y(family, sigma, ctx);
  double err = 0.0;
  for (double z : grid(0.1 * ctx.K(), 0.9 * ctx.K(), 5)) {
    err = std::max({err, y.residual(z, 1), y.residual(z, -1)});
  }
  return err;
}

double degenerate_sigma_suite(Trial& t) {
  const auto which = static_cast<DegenerateSigma>(t.draw % 3);
  t.fixed("case", t.draw % 3);
  const double k2 = t.pick("k2", 0.1, 0.9);
  const double A = t.pick("A", -1.0, 1.0);
  const double B = t.pick("B", 0.5, 1.5);
  const EllipticContext ctx = cached_context(k2);
  const HeunParams p = params_from_meromorphy({1, 0, 0, 0}, k2, degenerate_sigma_value(which, k2) / 4.0);
  double err = 0.0;
  for (double z : grid(0.1 * ctx.K(), 0.9 * ctx.K(), 5)) {
    const Jet j = degenerate_second_solution(which, ctx, z, A, B);
    err = std::max(err, z_form_residual(z_form_coefficients(p, z, ctx), j.value, j.d1, j.d2));
  }
  return err;
}

const Rational& rational_modulus(int i) {
  static const Rational k[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  return k[i % 3];
}

// The printed level-one Ψ and ν² as exact polynomials.
BiPoly printed_psi(LevelOneFamily f, const Rational& k2) {
  auto P = [](std::initializer_list<Rational> c) { return RatPoly(std::vector<Rational>(c)); };
  switch (f) {
    case LevelOneFamily::M0:
      return BiPoly({P({-1 - k2, k2}), P({1})});
    case LevelOneFamily::M1:
      return BiPoly({P({1}), P({0, 1})});
    case LevelOneFamily::M2:
      return BiPoly({P({1 - k2}), P({1, -1})});
    case LevelOneFamily::M3:
      return BiPoly({P({k2 - 1}), P({1, -k2})});
  }
  return {};
}

RatPoly printed_nu2(LevelOneFamily f, const Rational& k2) {
  auto lin = [](const Rational& root) { return RatPoly(std::vector<Rational>{-root, 1}); };
  switch (f) {
    case LevelOneFamily::M0:
      return lin(1) * lin(k2) * lin(1 + k2);
    case LevelOneFamily::M1:
      return lin(0) * lin(-1) * lin(-k2);
    case LevelOneFamily::M2:
      return lin(0) * lin(k2) * lin(k2 - 1);
    case LevelOneFamily::M3:
      return lin(0) * lin(1) * lin(1 - k2);
  }
  return {};
}

double spectral_suite(Trial& t) {
  const auto family = static_cast<LevelOneFamily>(t.draw % 4);
  t.fixed("family", t.draw % 4);
  const Rational& k2 = rational_modulus(t.draw / 4);
  t.fixed("k2", to_double(k2));
  const SpectralPolynomial sp = spectral_polynomial(family_vector(family), k2);
  const bool exact = sp.psi == printed_psi(family, k2) && sp.nu2 == printed_nu2(family, k2) && sp.g == 1;
  return exact ? 0.0 : 1.0;
}

// Ψ(σ; w) = a + b w: root of the level-one Ψ, or +∞ when Ψ has no w-dependence.
double psi_root(LevelOneFamily f, double sigma, double k2) {
  const double a = level_one_psi(f, sigma, k2, 0.0);
  const double b = level_one_psi(f, sigma, k2, 1.0) - a;
  return b == 0.0 ? std::numeric_limits<double>::infinity() : -a / b;
}

double finite_gap_suite(Trial& t) {
  const auto family = static_cast<LevelOneFamily>(t.draw % 4);
  t.fixed("family", t.draw % 4);
  const Rational& k2r = rational_modulus(t.draw / 4);
  const double k2 = t.fixed("k2", to_double(k2r));
  const EllipticContext ctx = cached_context(k2);
  double sigma = 0.0;
  for (int attempt = 0;; ++attempt) {
    const double omega = t.rng.uniform(0.02, 0.98) * ctx.K();
    const double sn = jacobi_sn_cn_dn(omega, ctx).sn;
    sigma = (1.0 - k2 * sn * sn) - family_constraint(family, 0.0, k2);
    const double root = psi_root(family, sigma, k2);
    if (!(root >= 0.0 && root <= 0.92)) break;
    if (attempt > 1000) throw ConvergenceError("finite-gap: no admissible sigma drawn");
  }
  t.fixed("sigma", sigma);
  const SpectralPolynomial sp = spectral_polynomial(family_vector(family), k2r);
  const LevelOneSolution y(family, sigma, ctx);
  double err = 0.0;
  for (int branch : {1, -1}) {
    const FiniteGapSolution fg(sp, sigma, branch, 1e-6, t.cfg.quad_order);
    double best = std::numeric_limits<double>::infinity();
    for (int sign : {1, -1}) {
      std::optional<cplx> ref;
      double spread = 0.0;
      for (double w : grid(0.02, 0.9, 20)) {
        const cplx ratio = fg.eval(w).value / y.value(z_of_w(w, ctx), sign);
        if (!ref) ref = ratio;
        spread = std::max(spread, std::abs(ratio / *ref - 1.0));
      }
      best = std::min(best, spread);
    }
    err = std::max(err, best);
  }
  return err;
}

double determinacy_suite(Trial& t) {
  const double k2 = t.fixed("k2", to_double(rational_modulus(t.draw)));
  const HeunParams p{k2, 0.0, 1.0, 1.0, 1.0, 1.0};
  const std::vector<double> r = determinacy_ratio(p, 2000);
  return std::abs(r.back() * k2 - 1.0);
}

struct Suite {
  std::string name;
  double tolerance;
  std::function<double(Trial&)> run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = [] {
    std::vector<Suite> s;
    for (int i = 1; i <= 4; ++i) {
      s.push_back({"dh" + std::to_string(i), 1e-9, [i](Trial& t) { return derivative_check(t, i); }});
    }
    for (Reduction r : {Reduction::Kuiken1, Reduction::Kuiken2, Reduction::Kuiken3, Reduction::Maier1,
                        Reduction::Maier2, Reduction::Joyce}) {
      s.push_back({std::string(reduction_name(r)), 1e-9, [r](Trial& t) { return reduction_suite(t, r); }});
    }
    s.push_back({"euler", 1e-10, euler_suite});
    s.push_back({"pfaff", 1e-10, pfaff_suite});
    s.push_back({"red1", 1e-10, [](Trial& t) { return red_suite(t, false); }});
    s.push_back({"red2", 1e-10, [](Trial& t) { return red_suite(t, true); }});
    s.push_back({"power-factor", 1e-8, power_factor_suite});
    s.push_back({"trivial", 1e-8, trivial_suite});
    s.push_back({"integral-transform", 1e-8, integral_transform_suite});
    s.push_back({"bateman", 1e-9, bateman_suite});
    s.push_back({"k2-one", 1e-8, k2_one_suite});
    s.push_back({"theta", 1e-10, theta_suite});
    s.push_back({"third-kind", 1e-9, third_kind_suite});
    s.push_back({"carlitz", 1e-8, carlitz_suite});
    s.push_back({"level-one", 1e-8, level_one_suite});
    s.push_back({"degenerate-sigma", 1e-7, degenerate_sigma_suite});
    s.push_back({"spectral", 0.0, spectral_suite});
    s.push_back({"finite-gap", 1e-7, finite_gap_suite});
    s.push_back({"determinacy", 1e-2, determinacy_suite});
    return s;
  }();
  return all;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : suites()) n.push_back(s.name);
    return n;
  }();
  return names;
}

bool is_suite(std::string_view name) {
  return std::any_of(suites().begin(), suites().end(), [&](const Suite& s) { return s.name == name; });
}

std::vector<CheckReport> run_suite(std::string_view suite, std::uint64_t seed, int draws, const RunConfig& cfg) {
  const auto it = std::find_if(suites().begin(), suites().end(), [&](const Suite& s) { return s.name == suite; });
  if (it == suites().end()) throw DomainError("unknown suite '" + std::string(suite) + "'");
  if (draws < 1) throw DomainError("draws must be positive");
  Draws rng(seed ^ fnv1a(suite));
  std::vector<CheckReport> out;
  for (int d = 0; d < draws; ++d) {
    Trial trial{d, draws, cfg, rng, {}};
    CheckReport r;
    r.check_id = it->name;
    r.draw = d;
    r.tolerance = it->tolerance;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.max_abs_error = it->run(trial);
      r.passed = r.max_abs_error <= r.tolerance;
      r.status = r.passed ? (trial.degenerate ? "passed-degenerate" : "passed") : "failed";
    } catch (const std::exception& e) {
      r.max_abs_error = std::numeric_limits<double>::quiet_NaN();
      r.passed = false;
      r.status = "error";
      r.message = e.what();
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    r.params = std::move(trial.params);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace heun::cli
