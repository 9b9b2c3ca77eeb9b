#pragma once

// Exact rationals and dense polynomials over them, for the spectral solver.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace heun {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q" or "p" with optional sign. Throws DomainError on malformed input or q = 0.
Rational parse_rational(std::string_view text);
/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& r);
double to_double(const Rational& r);

/// Dense univariate polynomial, coeffs[i] multiplies x^i; no trailing zeros.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  static RatPoly constant(const Rational& c);
  /// c·x^n
  static RatPoly monomial(const Rational& c, int n);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // −1 for 0
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  RatPoly derivative() const;
  Rational eval(const Rational& x) const;
  double eval(double x) const;

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly operator*(const Rational& s) const;
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  /// Quotient and remainder by a nonzero divisor.
  void divmod(const RatPoly& d, RatPoly& quot, RatPoly& rem) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Dense polynomial in (w, σ) stored as a list of w-polynomials per power of σ.
class BiPoly {
 public:
  BiPoly() = default;
  /// The σ^j coefficient list; parts[j] is a polynomial in w.
  explicit BiPoly(std::vector<RatPoly> parts);
  static BiPoly from_w(const RatPoly& p) { return BiPoly({p}); }

  int sigma_degree() const { return static_cast<int>(parts_.size()) - 1; }
  int w_degree() const;
  bool is_zero() const { return parts_.empty(); }
  const RatPoly& part(int j) const;
  const std::vector<RatPoly>& parts() const { return parts_; }
  Rational coeff(int i, int j) const { return part(j).coeff(i); }

  BiPoly dw() const;
  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator*(const Rational& s) const;
  bool operator==(const BiPoly& o) const { return parts_ == o.parts_; }

  double eval(double w, double sigma) const;

 private:
  void trim();
  std::vector<RatPoly> parts_;
};

/// Basis of the right nullspace of an exact matrix (row-major, rows × cols),
/// by reduced row echelon form.
std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> rows, int cols);

}  // namespace heun
