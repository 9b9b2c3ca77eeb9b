#include "heun/cli/commands.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heun/cli/checks.hpp"
#include "heun/cli/context_cache.hpp"
#include "heun/cli/report.hpp"
#include "heun/elliptic.hpp"
#include "heun/elliptic_solutions.hpp"
#include "heun/errors.hpp"
#include "heun/finite_gap.hpp"
#include "heun/series.hpp"

namespace heun::cli {

namespace {

using json = nlohmann::ordered_json;

cplx parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::logic_error&) {
    throw DomainError("malformed complex number '" + text + "' (expected re,im)");
  }
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

// "1.5", "K", "2K", "0.5K", "-K".
double parse_grid_token(const std::string& token, std::optional<double> K) {
  if (!token.empty() && token.back() == 'K') {
    if (!K) throw DomainError("grid uses K but no modulus was given");
    const std::string head = token.substr(0, token.size() - 1);
    if (head.empty() || head == "+") return *K;
    if (head == "-") return -*K;
    return std::stod(head) * *K;
  }
  std::size_t used = 0;
  const double v = std::stod(token, &used);
  if (used != token.size()) throw std::invalid_argument(token);
  return v;
}

std::vector<double> parse_grid(const std::string& text, std::optional<double> K) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw DomainError("grid must be start:stop:n");
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
  try {
    lo = parse_grid_token(parts[0], K);
    hi = parse_grid_token(parts[1], K);
    n = std::stoi(parts[2]);
  } catch (const std::logic_error&) {
    throw DomainError("malformed grid '" + text + "'");
  }
  if (n < 1) throw DomainError("grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return g;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConsistencyError*>(&e)) return kConsistency;
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const ConvergenceError*>(&e)) return kDomain;
  return kConsistency;
}

struct ParamFlags {
  double k2 = 0.5;
  double s = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
  double delta = 1.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--k2", k2, "Modulus k²");
    cmd->add_option("--s", s, "Accessory parameter");
    cmd->add_option("--alpha", alpha);
    cmd->add_option("--beta", beta);
    cmd->add_option("--gamma", gamma);
    cmd->add_option("--delta", delta);
  }
  HeunParams params() const { return {k2, s, alpha, beta, gamma, delta}; }
};

struct TableRow {
  double x;
  cplx value;
};

// Evaluates f on the grid; rows that throw or come out non-finite become NaN.
std::vector<TableRow> tabulate(const std::vector<double>& xs, const std::function<cplx(std::size_t)>& f,
                               bool& warned) {
  std::vector<TableRow> rows;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    cplx v;
    try {
      v = f(i);
    } catch (const DomainError&) {
      v = {std::nan(""), std::nan("")};
    } catch (const ConvergenceError&) {
      v = {std::nan(""), std::nan("")};
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      v = {std::nan(""), std::nan("")};
      warned = true;
    }
    rows.push_back({x, v});
  }
  return rows;
}

// Heun column: one coefficient table for the whole grid, SIMD Horner on the
// real points where the truncation is below tolerance, heun_eval elsewhere.
std::vector<TableRow> heun_column(const HeunParams& p, const std::vector<double>& ws, const RunConfig& cfg,
                                  bool& warned) {
  const SeriesSolution sol = heun_coefficients(p, cfg.series_nmax);
  const bool real = p.is_real();
  std::vector<double> fast(ws.size(), std::nan(""));
  if (real) sol.evaluate_real(ws, fast);
  const double limit = (1.0 - 1e-6) * p.radius();
  return tabulate(
      ws,
      [&](std::size_t i) -> cplx {
        const double w = ws[i];
        if (std::abs(w) >= limit) throw DomainError("outside series disk");
        const double truncation = sol.tail_estimate * std::pow(std::abs(w), cfg.series_nmax);
        if (real && truncation <= cfg.precision_tol * std::max(1.0, std::abs(fast[i]))) return fast[i];
        return heun_eval(p, w, cfg.precision_tol).value;
      },
      warned);
}

void print_rows(std::ostream& out, const std::vector<TableRow>& rows, bool normalize) {
  cplx scale = 1.0;
  if (normalize) {
    for (const auto& r : rows) {
      if (std::isfinite(r.value.real()) && std::abs(r.value) > 0.0) {
        scale = r.value;
        break;
      }
    }
  }
  out << "x,value_re,value_im\n";
  for (const auto& r : rows) {
    const cplx v = r.value / scale;
    out << format_double(r.x) << ',' << (std::isnan(v.real()) ? "nan" : format_double(v.real())) << ','
        << (std::isnan(v.imag()) ? "nan" : format_double(v.imag())) << '\n';
  }
}

std::optional<ThetaKind> parse_theta_kind(const std::string& s) {
  if (s == "H") return ThetaKind::H;
  if (s == "H1") return ThetaKind::H1;
  if (s == "Theta") return ThetaKind::Theta;
  if (s == "Theta1") return ThetaKind::Theta1;
  return std::nullopt;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heun functions: series evaluation, identity checks and finite-gap solutions", "heun"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  RunConfig cfg;
  std::string format = "json";
  app.add_option("--precision-tol", cfg.precision_tol, "Target tolerance for series evaluation");
  app.add_option("--quad-order", cfg.quad_order, "Gauss nodes per integral");
  app.add_option("--series-nmax", cfg.series_nmax, "Coefficient count for batched series tables");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate the local Heun function and its derivatives");
  ParamFlags eval_params;
  eval_params.add_to(eval);
  std::string eval_w = "0";
  std::optional<double> eval_tol;
  eval->add_option("--w", eval_w, "Point as re or re,im")->required();
  eval->add_option("--tol", eval_tol, "Tail tolerance");

  // identity-check
  auto* check = app.add_subcommand("identity-check", "Run randomized identity checks");
  std::string suite;
  bool all = false;
  std::uint64_t seed = 1;
  int draws = 5;
  bool timing = false;
  check->add_option("--suite", suite, "Suite name or 'all'");
  check->add_flag("--all", all, "Run every suite");
  check->add_option("--seed", seed);
  check->add_option("--draws", draws);
  check->add_flag("--timing", timing, "Include runtime_ms");
  check->add_flag("--list", [&](std::int64_t) {
    for (const auto& n : suite_names()) out << n << '\n';
    throw CLI::Success();
  });

  // spectral
  auto* spectral = app.add_subcommand("spectral", "Exact spectral polynomial for a meromorphy vector");
  std::string mv_text;
  std::string k2_text = "1/2";
  spectral->add_option("--mv", mv_text, "m0,m1,m2,m3")->required();
  spectral->add_option("--k2", k2_text, "Modulus as p/q");

  // table
  auto* table = app.add_subcommand("table", "Tabulate an expression on a grid as CSV");
  std::string expr;
  std::string grid_text;
  ParamFlags table_params;
  table_params.add_to(table);
  std::string family_text = "m1";
  std::string table_mv;
  std::string table_k2_exact;
  double sigma = 0.5;
  int branch = 1;
  int sign = 1;
  std::string which = "Theta";
  bool normalize = false;
  std::string x_var = "z";
  table->add_option("--expr", expr)->required()->check(
      CLI::IsMember({"heun", "level1", "finite-gap", "sn", "theta"}));
  table->add_option("--grid", grid_text, "start:stop:n, endpoints may use K (e.g. 0:K:11)")->required();
  table->add_option("--family", family_text, "Level-one family m0..m3");
  table->add_option("--mv", table_mv, "Meromorphy vector for finite-gap (overrides --family)");
  table->add_option("--k2-exact", table_k2_exact, "Modulus as p/q for finite-gap");
  table->add_option("--sigma", sigma);
  table->add_option("--branch", branch)->check(CLI::IsMember({-1, 1}));
  table->add_option("--sign", sign)->check(CLI::IsMember({-1, 1}));
  table->add_option("--which", which, "H, H1, Theta or Theta1");
  table->add_flag("--normalize", normalize, "Divide by the first finite value");
  table->add_option("--x", x_var, "Abscissa for level1: z or w")->check(CLI::IsMember({"z", "w"}));

  // elliptic
  auto* elliptic = app.add_subcommand("elliptic", "Elliptic helpers");
  std::string mode;
  double ell_k2 = 0.5;
  double ell_s = 0.25;
  double ell_w = 0.5;
  elliptic->add_option("mode", mode, "carlitz or context")->required()->check(
      CLI::IsMember({"carlitz", "context"}));
  elliptic->add_option("--k2", ell_k2);
  elliptic->add_option("--s", ell_s);
  elliptic->add_option("--w", ell_w);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    return kOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kDomain;
  }

  try {
    cfg.output_format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    cfg.validate();

    if (*eval) {
      const cplx w = parse_complex(eval_w);
      const HeunValue v = heun_eval(eval_params.params(), w, eval_tol.value_or(1e-15));
      json j;
      j["value"] = complex_json(v.value);
      j["n_terms"] = v.n_terms;
      j["tail_estimate"] = v.tail_estimate;
      out << j.dump() << '\n';
      return kOk;
    }

    if (*check) {
      std::vector<std::string> names;
      if (all || suite == "all") {
        names = suite_names();
      } else if (suite.empty()) {
        throw DomainError("identity-check needs --suite or --all");
      } else if (!is_suite(suite)) {
        throw DomainError("unknown suite '" + suite + "'");
      } else {
        names = {suite};
      }
      const bool csv = cfg.output_format == OutputFormat::Csv;
      if (csv) out << report_csv_header(timing) << '\n';
      bool ok = true;
      for (const auto& name : names) {
        for (const CheckReport& r : run_suite(name, seed, draws, cfg)) {
          ok = ok && r.passed;
          if (csv) {
            out << report_csv(r, timing) << '\n';
          } else {
            out << report_json(r, timing).dump() << '\n';
          }
        }
      }
      return ok ? kOk : kConsistency;
    }

    if (*spectral) {
      const SpectralPolynomial sp = spectral_polynomial(parse_meromorphy(mv_text), parse_rational(k2_text));
      out << sp.to_json() << '\n';
      return kOk;
    }

    if (*table) {
      bool warned = false;
      std::vector<TableRow> rows;
      const double k2 = table_params.k2;
      auto K = [&]() -> std::optional<double> {
        if (expr == "heun") return std::nullopt;
        if (expr == "finite-gap" && !table_k2_exact.empty()) return complete_elliptic_K(to_double(parse_rational(table_k2_exact)));
        return complete_elliptic_K(k2);
      };
      const std::vector<double> xs = parse_grid(grid_text, K());
      if (expr == "heun") {
        rows = heun_column(table_params.params(), xs, cfg, warned);
      } else if (expr == "sn") {
        const EllipticContext ctx = cached_context(k2);
        rows = tabulate(xs, [&](std::size_t i) -> cplx { return jacobi_sn_cn_dn(xs[i], ctx).sn; }, warned);
      } else if (expr == "theta") {
        const auto kind = parse_theta_kind(which);
        if (!kind) throw DomainError("unknown theta function '" + which + "'");
        const EllipticContext ctx = cached_context(k2);
        std::vector<double> vals(xs.size());
        theta_grid(*kind, xs, ctx, vals);
        rows = tabulate(xs, [&](std::size_t i) -> cplx { return vals[i]; }, warned);
      } else if (expr == "level1") {
        const auto fam = parse_family(family_text);
        if (!fam) throw DomainError("unknown family '" + family_text + "'");
        const EllipticContext ctx = cached_context(k2);
        const LevelOneSolution y(*fam, sigma, ctx);
        rows = tabulate(
            xs,
            [&](std::size_t i) -> cplx {
              const double z = x_var == "w" ? z_of_w(xs[i], ctx) : xs[i];
              return y.value(z, sign);
            },
            warned);
      } else {
        MeromorphyVector mv;
        if (!table_mv.empty()) {
          mv = parse_meromorphy(table_mv);
        } else {
          const auto fam = parse_family(family_text);
          if (!fam) throw DomainError("unknown family '" + family_text + "'");
          mv = family_vector(*fam);
        }
        const Rational k2r = table_k2_exact.empty() ? Rational(k2) : parse_rational(table_k2_exact);
        const SpectralPolynomial sp = spectral_polynomial(mv, k2r);
        const FiniteGapSolution fg(sp, sigma, branch, 1e-6, cfg.quad_order);
        rows = tabulate(xs, [&](std::size_t i) { return fg.eval(xs[i]).value; }, warned);
      }
      print_rows(out, rows, normalize);
      return warned ? kWarning : kOk;
    }

    if (*elliptic) {
      const EllipticContext ctx = cached_context(ell_k2);
      json j;
      if (mode == "context") {
        j["k2"] = ctx.k2();
        j["K"] = ctx.K();
        j["Kprime"] = ctx.Kprime();
        j["E"] = ctx.E();
        j["Eprime"] = ctx.Eprime();
        j["q"] = ctx.q();
        j["legendre_residual"] = ctx.legendre_residual();
      } else {
        const CarlitzPair c = carlitz_pair(ctx, ell_s, ell_w);
        j["z"] = c.z;
        j["y_plus"] = complex_json(c.y_plus);
        j["y_minus"] = complex_json(c.y_minus);
        j["y_even"] = complex_json(0.5 * (c.y_plus + c.y_minus));
      }
      out << j.dump() << '\n';
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kOk;
}

}  // namespace heun::cli
