#pragma once

// Complete elliptic integrals, Jacobi theta functions in the H/Θ notation,
// Jacobi sn/cn/dn and zeta, and the inverse of sn on [0, K].
//
// Conventions: k2 is the parameter m = k², the nome is q = exp(-π K'/K) and
// theta arguments are in quarter-period units, v = π z / (2K):
//
//   H(z)  = θ1(v, q)   odd, zero at 0, period 4K up to sign
//   H1(z) = θ2(v, q)
//   Θ(z)  = θ4(v, q)   zero at iK'
//   Θ1(z) = θ3(v, q)

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace heun {

using cplx = std::complex<double>;

inline constexpr double kThetaTol = 1e-14;
inline constexpr double kPoleTol = 1e-10;

double complete_elliptic_K(double k2);
double complete_elliptic_E(double k2);

/// Carlson's symmetric integral R_F(x, y, z); at most one argument may be 0.
double carlson_rf(double x, double y, double z);

/// Descending Landen table (Bulirsch): AGM terms a_l and b_l of (1, k') and
/// the final mean.
struct AgmTable {
  std::vector<double> a;
  std::vector<double> b;
  double mean = 1.0;
  double k2 = 0.0;
};

class EllipticContext {
 public:
  /// Cached values for the modulus k2 ∈ (0, 1).
  explicit EllipticContext(double k2);

  double k2() const { return k2_; }
  double kprime2() const { return kprime2_; }
  double k() const;
  double kprime() const;
  double K() const { return K_; }
  double Kprime() const { return Kprime_; }
  double E() const { return E_; }
  double Eprime() const;
  double q() const { return q_; }

  /// E K' + E' K − K K' − π/2, relative to π/2.
  double legendre_residual() const;

  const AgmTable& agm() const { return agm_; }
  const AgmTable& agm_dual() const { return agm_dual_; }

  /// Rebuilds a context from serialized values, rejecting records whose
  /// nome is inconsistent with K and K'.
  static EllipticContext restore(double k2, double K, double Kprime, double E, double q);

 private:
  EllipticContext() = default;

  double k2_ = 0.0;
  double kprime2_ = 1.0;
  double K_ = 0.0;
  double Kprime_ = 0.0;
  double E_ = 0.0;
  double q_ = 0.0;
  AgmTable agm_;
  AgmTable agm_dual_;
};

EllipticContext make_context(double k2);

enum class ThetaKind { H, H1, Theta, Theta1 };

struct ThetaValue {
  ThetaKind which;
  cplx z;
  cplx value;
  int terms_used;
};

/// q-series for the selected theta function or one of its z-derivatives
/// (derivative ∈ {0,..,3}). Requires |Im z| < K'.
ThetaValue theta(ThetaKind which, cplx z, const EllipticContext& ctx, int derivative = 0,
                 double tol = kThetaTol);

/// Real-argument shorthand for theta(...).value.real().
double theta_real(ThetaKind which, double z, const EllipticContext& ctx, int derivative = 0,
                  double tol = kThetaTol);

/// Batched real-axis evaluation; out[i] = theta_real(which, z[i], ctx, derivative).
/// Uses the SIMD trig-series kernel with a fixed term count for the whole batch.
void theta_grid(ThetaKind which, std::span<const double> z, const EllipticContext& ctx,
                std::span<double> out, int derivative = 0);

/// g = f'/f of a theta function at real z and its first two derivatives.
struct LogDerivatives {
  double d1;  // f'/f
  double d2;  // (f'/f)'
  double d3;  // (f'/f)''
};
LogDerivatives theta_log_derivatives(ThetaKind which, double z, const EllipticContext& ctx);

template <class T>
struct JacobiTriple {
  T sn;
  T cn;
  T dn;
};

JacobiTriple<double> jacobi_sn_cn_dn(double u, const EllipticContext& ctx);
JacobiTriple<cplx> jacobi_sn_cn_dn(cplx z, const EllipticContext& ctx);

/// Z(z) = Θ'(z)/Θ(z) for real z.
double jacobi_zeta(double z, const EllipticContext& ctx);

/// The z ∈ [0, K] with sn(z) = x, for x ∈ [0, 1].
double inverse_sn(double x, const EllipticContext& ctx);

struct ThetaProductCheck {
  double lhs;
  double rhs;
  std::optional<double> ratio;  // empty when rhs vanishes
};

/// Both sides of H(z−ω)H(z+ω) / (Θ²(z)Θ²(ω)Θ²(0)) = k² sn²z − k² sn²ω.
ThetaProductCheck theta_product_identity_check(double z, double omega, const EllipticContext& ctx);

}  // namespace heun
